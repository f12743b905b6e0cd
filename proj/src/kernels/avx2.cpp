#include "betatile/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

#include <cmath>

namespace betatile::kernels::avx2 {

#if defined(__AVX2__)

bool available() { return __builtin_cpu_supports("avx2"); }

void scale_shift(const double* x, double* y, std::size_t n, double s, double t) {
  const __m256d vs = _mm256_set1_pd(s), vt = _mm256_set1_pd(t);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, v), vt));
  }
  for (; i < n; ++i) y[i] = s * x[i] + t;
}

void rot_shift(const double* a, const double* b, double* oa, double* ob, std::size_t n, double p, double q,
               double ta, double tb) {
  const __m256d vp = _mm256_set1_pd(p), vq = _mm256_set1_pd(q);
  const __m256d vta = _mm256_set1_pd(ta), vtb = _mm256_set1_pd(tb);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d u = _mm256_loadu_pd(a + i), v = _mm256_loadu_pd(b + i);
    __m256d na = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(u, vp), _mm256_mul_pd(v, vq)), vta);
    __m256d nb = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(v, vp), _mm256_mul_pd(u, vq)), vtb);
    _mm256_storeu_pd(oa + i, na);
    _mm256_storeu_pd(ob + i, nb);
  }
  for (; i < n; ++i) {
    double u = a[i], v = b[i];
    double na = (u * p + v * q) + ta;
    double nb = (v * p - u * q) + tb;
    oa[i] = na;
    ob[i] = nb;
  }
}

void cell_index(const double* x, std::int64_t* out, std::size_t n, double inv) {
  const __m256d vi = _mm256_set1_pd(inv);
  alignas(32) double buf[4];
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_floor_pd(_mm256_mul_pd(_mm256_loadu_pd(x + i), vi));
    _mm256_store_pd(buf, v);
    for (int k = 0; k < 4; ++k) out[i + k] = std::int64_t(buf[k]);
  }
  for (; i < n; ++i) out[i] = std::int64_t(std::floor(x[i] * inv));
}

#else

bool available() { return false; }

void scale_shift(const double* x, double* y, std::size_t n, double s, double t) {
  scalar::scale_shift(x, y, n, s, t);
}

void rot_shift(const double* a, const double* b, double* oa, double* ob, std::size_t n, double p, double q,
               double ta, double tb) {
  scalar::rot_shift(a, b, oa, ob, n, p, q, ta, tb);
}

void cell_index(const double* x, std::int64_t* out, std::size_t n, double inv) { scalar::cell_index(x, out, n, inv); }

#endif

}  // namespace betatile::kernels::avx2
