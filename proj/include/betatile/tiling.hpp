#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "betatile/betamap.hpp"

namespace betatile {

// Graph-directed IFS  D_x = U_{(x,x',a)} (M D_x' + Phi(a)) on the V points.
struct Gifs {
  BetaTransform t;
  VData v;
  std::vector<TransferEdge> edges;
  std::vector<std::vector<int>> out;  // edge indices by source vertex
  std::vector<HPoint> phi_digit;
  double C = 0.0;  // max |Phi(a)| / (1 - rho)
};

Gifs gifs_build(const BetaTransform& t, const VData& v);

// Depth-k approximation of D_x in H block coordinates (structure of arrays).
struct TileCloud {
  int vertex = 0;
  int depth = 0;
  std::vector<std::vector<double>> x;  // x[coord][point]
  double err = 0.0;                    // Hausdorff distance to D_x is at most err
  std::size_t size() const { return x.empty() ? 0 : x[0].size(); }
};

std::vector<TileCloud> tile_clouds(const Gifs& g, int depth);
TileCloud tile_cloud(const Gifs& g, int vertex, int depth);
// smallest depth with C rho^k below eps
int depth_for(const Gifs& g, double eps);
// one point of D_x refinement: union over edges of M cloud(x') + Phi(a), no deduplication
TileCloud refine_once(const Gifs& g, const std::vector<TileCloud>& clouds, int vertex);

// occupied grid cells of side s
std::size_t box_count(const TileCloud& c, double s);
void bounding_box(const TileCloud& c, std::vector<double>& lo, std::vector<double>& hi);

struct NatExt {
  std::vector<TileCloud> clouds;
  std::vector<Interval> J;
  std::vector<double> measure;  // (d-1)-dim measure of each D_x, zero off the support
  double area = 0.0;            // d-dim measure of the natural extension domain
  double err = 0.0;
  int depth = 0;
};

NatExt natext_domain(const Gifs& g, const Density& h, int depth);

struct PeriodicPoint {
  QBeta x;
  std::vector<int> cycle;  // digits of the periodic orbit starting at x
};

struct PeriodicSet {
  std::vector<PeriodicPoint> points;  // sorted by value
  std::size_t candidates = 0;
  int find(const QBeta& x) const;
};

// per-conjugate bound max_a |Gamma_j(a)| / (1 - |beta_j|), indexed by conjugate
std::vector<double> conjugate_bounds(const BetaTransform& t, double factor = 1.0);
// all z in Z[beta] with z in [lo, hi] and |Gamma_j(z)| <= bound_j, via a box of Psi coordinates
std::vector<QBeta> lattice_points(const FieldPtr& f, const QBeta& lo, const QBeta& hi,
                                  const std::vector<double>& bound, std::size_t budget = 50000000);

PeriodicSet purely_periodic_points(const BetaTransform& t, std::size_t budget = 50000000);

struct FCheck {
  bool holds = false;
  std::size_t count = 0;
};
FCheck check_f(const PeriodicSet& p);

struct Membership {
  std::vector<QBeta> owners;  // sorted
  int k = 0;
};
// exact tiles containing Phi(z), z >= 0 in Z[beta]
Membership tiles_containing(const BetaTransform& t, const PeriodicSet& p, const QBeta& z, int max_k = 4096);

struct WWitness {
  QBeta y, z;
  int k = 0;
};

enum class WStatus { Holds, FailsByBudget, Refuted };

struct WCheck {
  WStatus status = WStatus::FailsByBudget;
  QBeta x;        // merging point when status == Holds
  QBeta epsilon;  // min_y (right end of the piece of y - y) * beta
  std::vector<WWitness> witnesses;
  bool common = false;  // one z for every y
  std::size_t tried = 0;
};

WCheck check_w(const BetaTransform& t, const PeriodicSet& p, std::size_t budget = 4000);

struct CoveringEstimate {
  std::size_t min = 0, max = 0;
  std::map<std::size_t, std::size_t> histogram;
  std::vector<std::size_t> counts;
};
CoveringEstimate covering_degree_estimate(const BetaTransform& t, const PeriodicSet& p,
                                          const std::vector<QBeta>& samples);
// nonnegative Z[beta] samples by increasing Psi height
std::vector<QBeta> default_samples(const BetaTransform& t, std::size_t n);

struct TorusCoverage {
  std::map<int, std::size_t> histogram;  // number of translates covering a sample point
  std::size_t samples = 0;
  double fraction_one = 0.0;  // share of samples covered by exactly one translate
  long scale = 1;
};

// coverage of R^d by x + X^ for x in scale Z^d, sampled in one fundamental domain
TorusCoverage torus_translates(const Gifs& g, const NatExt& nx, long lattice_box, std::size_t samples,
                               long scale = 1, std::uint64_t seed = 1);

// digits a with p in X^_a + Z^d at cloud resolution, used for the lattice digit property
std::vector<int> torus_digits(const Gifs& g, const NatExt& nx, const std::vector<double>& p, long lattice_box);

}  // namespace betatile
