#include "qnlo/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "qnlo/errors.hpp"

namespace qnlo::kernels {

namespace {

struct Table {
    void (*caxpy)(std::size_t, cd, const cd*, cd*);
    void (*copy_scaled)(std::size_t, cd, const cd*, cd*);
    void (*scale)(std::size_t, cd, cd*);
    cd (*dotc)(std::size_t, const cd*, const cd*);
    cd (*dotu)(std::size_t, const cd*, const cd*);
    double (*norm2)(std::size_t, const cd*);
    void (*matmul)(std::size_t, std::size_t, std::size_t, const cd*, const cd*, cd*);
    void (*matvec)(std::size_t, std::size_t, const cd*, const cd*, cd*);
    void (*grid_mul)(std::size_t, const cd*, const cd*, double, cd*);
    void (*grid_mul_add)(std::size_t, const cd*, const cd*, const cd*, double, double, cd*);
    void (*grid_mul_add_conj)(std::size_t, const cd*, const cd*, const cd*, double, double, cd*);
    void (*accum_re)(std::size_t, cd, const cd*, double*);
    double (*dot_real)(std::size_t, const double*, const double*);
};

constexpr Table kScalarTable = {
    scalar::caxpy,    scalar::copy_scaled,  scalar::scale,
    scalar::dotc,     scalar::dotu,         scalar::norm2,
    scalar::matmul,   scalar::matvec,       scalar::grid_mul,
    scalar::grid_mul_add, scalar::grid_mul_add_conj, scalar::accum_re,
    scalar::dot_real,
};

#if defined(__x86_64__) || defined(__i386__)
constexpr Table kAvx2Table = {
    avx2::caxpy,    avx2::copy_scaled,  avx2::scale,
    avx2::dotc,     avx2::dotu,         avx2::norm2,
    avx2::matmul,   avx2::matvec,       avx2::grid_mul,
    avx2::grid_mul_add, avx2::grid_mul_add_conj, avx2::accum_re,
    avx2::dot_real,
};
#endif

// Called during static init: must not throw, so bad env values fall back to
// autodetection with a note on stderr.
Backend pick_initial_backend() {
    const Backend detected = avx2_supported() ? Backend::Avx2 : Backend::Scalar;
    if (const char* env = std::getenv("QNLO_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::Avx2;
        std::fprintf(stderr, "qnlo: ignoring QNLO_KERNELS=%s (unknown or unsupported)\n", env);
    }
    return detected;
}

Backend g_backend = pick_initial_backend();
const Table* g_table = (g_backend == Backend::Scalar) ? &kScalarTable
#if defined(__x86_64__) || defined(__i386__)
                                                      : &kAvx2Table;
#else
                                                      : &kScalarTable;
#endif

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() {
    return g_backend;
}

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_supported()) {
        throw Error("AVX2+FMA backend not supported on this CPU");
    }
    g_backend = b;
#if defined(__x86_64__) || defined(__i386__)
    g_table = (b == Backend::Scalar) ? &kScalarTable : &kAvx2Table;
#else
    g_table = &kScalarTable;
#endif
}

std::string backend_name(Backend b) {
    return b == Backend::Scalar ? "scalar" : "avx2";
}

void caxpy(std::size_t n, cd a, const cd* x, cd* y) {
    g_table->caxpy(n, a, x, y);
}
void copy_scaled(std::size_t n, cd a, const cd* x, cd* y) {
    g_table->copy_scaled(n, a, x, y);
}
void scale(std::size_t n, cd a, cd* x) {
    g_table->scale(n, a, x);
}
cd dotc(std::size_t n, const cd* x, const cd* y) {
    return g_table->dotc(n, x, y);
}
cd dotu(std::size_t n, const cd* x, const cd* y) {
    return g_table->dotu(n, x, y);
}
double norm2(std::size_t n, const cd* x) {
    return g_table->norm2(n, x);
}
void matmul(std::size_t m, std::size_t k, std::size_t n, const cd* a, const cd* b, cd* c) {
    g_table->matmul(m, k, n, a, b, c);
}
void matvec(std::size_t m, std::size_t n, const cd* a, const cd* x, cd* y) {
    g_table->matvec(m, n, a, x, y);
}
void grid_mul(std::size_t n, const cd* a, const cd* x, double c, cd* out) {
    g_table->grid_mul(n, a, x, c, out);
}
void grid_mul_add(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                  cd* out) {
    g_table->grid_mul_add(n, a, x, y, c1, c2, out);
}
void grid_mul_add_conj(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                       cd* out) {
    g_table->grid_mul_add_conj(n, a, x, y, c1, c2, out);
}
void accum_re(std::size_t n, cd s, const cd* z, double* w) {
    g_table->accum_re(n, s, z, w);
}
double dot_real(std::size_t n, const double* x, const double* y) {
    return g_table->dot_real(n, x, y);
}

}  // namespace qnlo::kernels
