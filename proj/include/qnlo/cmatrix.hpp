#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qnlo/errors.hpp"
#include "qnlo/kernels.hpp"

namespace qnlo {

using cd = std::complex<double>;

/// Dense row-major complex matrix. The workhorse container for operators and
/// density matrices; all arithmetic goes through the kernels layer.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cd* data() { return data_.data(); }
    const cd* data() const { return data_.data(); }
    cd* row(std::size_t i) { return data_.data() + i * cols_; }
    const cd* row(std::size_t i) const { return data_.data() + i * cols_; }

    void set_zero() { std::fill(data_.begin(), data_.end(), cd(0.0, 0.0)); }

    CMat adjoint() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cd trace() const {
        cd t = 0.0;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cd& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    /// max |A - A^dagger| over entries; 0 for an exactly Hermitian matrix.
    double hermiticity_defect() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    CMat& operator+=(const CMat& o) {
        check_same_shape(o);
        kernels::caxpy(data_.size(), 1.0, o.data(), data());
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        check_same_shape(o);
        kernels::caxpy(data_.size(), -1.0, o.data(), data());
        return *this;
    }
    CMat& operator*=(cd s) {
        kernels::scale(data_.size(), s, data());
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cd s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        CMat c(a.rows_, b.cols_);
        kernels::matmul(a.rows_, a.cols_, b.cols_, a.data(), b.data(), c.data());
        return c;
    }

    friend std::vector<cd> operator*(const CMat& a, const std::vector<cd>& x) {
        if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
        std::vector<cd> y(a.rows_);
        kernels::matvec(a.rows_, a.cols_, a.data(), x.data(), y.data());
        return y;
    }

private:
    void check_same_shape(const CMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

}  // namespace qnlo
