#pragma once

#include <string>
#include <vector>

#include "qnlo/config.hpp"

namespace qnlo {

/// A named figure-reproduction experiment: one or more fully pinned runs.
struct Preset {
    std::string name;
    std::string description;  // includes every parameter the figure omits
    std::vector<RunConfig> runs;
};

const std::vector<Preset>& preset_registry();

/// Throws ConfigError when the name is unknown.
const Preset& find_preset(const std::string& name);

}  // namespace qnlo
