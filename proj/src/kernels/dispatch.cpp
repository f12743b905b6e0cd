#include <cstdlib>
#include <cstring>

#include "betatile/kernels.hpp"

namespace betatile::kernels {

namespace {

Isa initial_isa() {
  const char* env = std::getenv("BETATILE_ISA");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return detected_isa();
}

Isa& current() {
  static Isa isa = initial_isa();
  return isa;
}

}  // namespace

Isa detected_isa() { return avx2::available() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return current(); }

void set_isa(Isa isa) { current() = (isa == Isa::Avx2 && !avx2::available()) ? Isa::Scalar : isa; }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void scale_shift(const double* x, double* y, std::size_t n, double s, double t) {
  if (current() == Isa::Avx2)
    avx2::scale_shift(x, y, n, s, t);
  else
    scalar::scale_shift(x, y, n, s, t);
}

void rot_shift(const double* a, const double* b, double* oa, double* ob, std::size_t n, double p, double q,
               double ta, double tb) {
  if (current() == Isa::Avx2)
    avx2::rot_shift(a, b, oa, ob, n, p, q, ta, tb);
  else
    scalar::rot_shift(a, b, oa, ob, n, p, q, ta, tb);
}

void cell_index(const double* x, std::int64_t* out, std::size_t n, double inv) {
  if (current() == Isa::Avx2)
    avx2::cell_index(x, out, n, inv);
  else
    scalar::cell_index(x, out, n, inv);
}

}  // namespace betatile::kernels
