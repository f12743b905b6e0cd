#include <cmath>

#include "betatile/error.hpp"
#include "betatile/tiling.hpp"

namespace betatile {

namespace {

double norm(const HPoint& p) {
  double s = 0;
  for (double v : p.x) s += v * v;
  return std::sqrt(s) + p.err;
}

}  // namespace

Gifs gifs_build(const BetaTransform& t0, const VData& v) {
  if (!t0.digits_integral()) fail(Errc::DigitsNotIntegral, "tiles need digits in Z[beta]");
  Gifs g;
  g.t = t0.side() == Side::Right ? t0 : t0.twin();
  g.v = v;
  g.edges = transfer_edges(g.t, v);
  g.out.assign(v.points.size(), {});
  for (size_t e = 0; e < g.edges.size(); ++e) g.out[g.edges[e].from].push_back(int(e));
  const FieldPtr& f = g.t.field();
  double m = 0;
  for (const auto& a : g.t.digits()) {
    g.phi_digit.push_back(f->phi(a));
    m = std::max(m, norm(g.phi_digit.back()));
  }
  g.C = m / (1.0 - f->rho());
  return g;
}

int depth_for(const Gifs& g, double eps) {
  double rho = g.t.field()->rho();
  int k = 0;
  double e = g.C;
  while (e >= eps && k < 200) {
    e *= rho;
    ++k;
  }
  return k;
}

}  // namespace betatile
