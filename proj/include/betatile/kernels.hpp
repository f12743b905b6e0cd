#pragma once

#include <cstddef>
#include <cstdint>

// Point-cloud kernels over structure-of-arrays coordinates.
// Scalar and AVX2 variants produce bit-identical results (no contraction, same operation order).

namespace betatile::kernels {

enum class Isa { Scalar, Avx2 };

Isa detected_isa();
Isa active_isa();
// force a variant, Avx2 falls back to Scalar when the CPU lacks it
void set_isa(Isa isa);
const char* isa_name(Isa isa);

// y = s * x + t
void scale_shift(const double* x, double* y, std::size_t n, double s, double t);
// (a, b) -> (a p + b q + ta, b p - a q + tb)
void rot_shift(const double* a, const double* b, double* oa, double* ob, std::size_t n, double p, double q,
               double ta, double tb);
// out = floor(x * inv)
void cell_index(const double* x, std::int64_t* out, std::size_t n, double inv);

namespace scalar {
void scale_shift(const double* x, double* y, std::size_t n, double s, double t);
void rot_shift(const double* a, const double* b, double* oa, double* ob, std::size_t n, double p, double q,
               double ta, double tb);
void cell_index(const double* x, std::int64_t* out, std::size_t n, double inv);
}  // namespace scalar

namespace avx2 {
bool available();
void scale_shift(const double* x, double* y, std::size_t n, double s, double t);
void rot_shift(const double* a, const double* b, double* oa, double* ob, std::size_t n, double p, double q,
               double ta, double tb);
void cell_index(const double* x, std::int64_t* out, std::size_t n, double inv);
}  // namespace avx2

}  // namespace betatile::kernels
