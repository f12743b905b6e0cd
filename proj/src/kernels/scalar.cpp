#include <cmath>

#include "betatile/kernels.hpp"

namespace betatile::kernels::scalar {

void scale_shift(const double* x, double* y, std::size_t n, double s, double t) {
  for (std::size_t i = 0; i < n; ++i) y[i] = s * x[i] + t;
}

void rot_shift(const double* a, const double* b, double* oa, double* ob, std::size_t n, double p, double q,
               double ta, double tb) {
  for (std::size_t i = 0; i < n; ++i) {
    double u = a[i], v = b[i];
    double na = (u * p + v * q) + ta;
    double nb = (v * p - u * q) + tb;
    oa[i] = na;
    ob[i] = nb;
  }
}

void cell_index(const double* x, std::int64_t* out, std::size_t n, double inv) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::int64_t(std::floor(x[i] * inv));
}

}  // namespace betatile::kernels::scalar
