#include <cmath>
#include <random>
#include <unordered_set>

#include "betatile/error.hpp"
#include "betatile/tiling.hpp"

namespace betatile {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto v : k) {
      h ^= std::uint64_t(v);
      h *= 0x100000001b3ull;
    }
    return std::size_t(h);
  }
};

// occupied cells of each tile cloud, side 2 err
class Occupancy {
 public:
  Occupancy(const Gifs& g, const NatExt& nx) : g_(g), nx_(nx), s_(2 * nx.err) {
    for (size_t v = 0; v < nx.clouds.size(); ++v) {
      cells_.emplace_back();
      if (nx.measure[v] <= 0) continue;
      const auto& c = nx.clouds[v];
      for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<std::int64_t> k(c.x.size());
        for (size_t j = 0; j < c.x.size(); ++j) k[j] = std::int64_t(std::floor(c.x[j][i] / s_));
        cells_.back().insert(std::move(k));
      }
      lo_.push_back(nx.J[v].lo.approx());
      hi_.push_back(nx.J[v].hi.approx());
    }
  }

  // vertices v with y in J_v v1 - D_v
  template <class F>
  void hits(const std::vector<double>& y, F&& fn) const {
    const PisotField& f = *g_.t.field();
    double t;
    std::vector<double> h = f.from_ambient_h(y, t);
    std::vector<std::int64_t> k(h.size());
    for (size_t j = 0; j < h.size(); ++j) k[j] = std::int64_t(std::floor(-h[j] / s_));
    int idx = 0;
    for (size_t v = 0; v < cells_.size(); ++v) {
      if (nx_.measure[v] <= 0) continue;
      bool in = t >= lo_[idx] && t < hi_[idx];
      ++idx;
      if (in && cells_[v].count(k)) fn(int(v), t);
    }
  }

 private:
  const Gifs& g_;
  const NatExt& nx_;
  double s_;
  std::vector<std::unordered_set<std::vector<std::int64_t>, KeyHash>> cells_;
  std::vector<double> lo_, hi_;
};

template <class F>
void for_lattice(int d, long box, long scale, F&& fn) {
  std::vector<long> n(d, -box);
  for (;;) {
    std::vector<double> off(d);
    for (int i = 0; i < d; ++i) off[i] = double(n[i] * scale);
    fn(off);
    int i = 0;
    while (i < d && n[i] == box) {
      n[i] = -box;
      ++i;
    }
    if (i == d) return;
    ++n[i];
  }
}

}  // namespace

TorusCoverage torus_translates(const Gifs& g, const NatExt& nx, long lattice_box, std::size_t samples, long scale,
                               std::uint64_t seed) {
  const PisotField& f = *g.t.field();
  int d = f.degree();
  if (d > 3) fail(Errc::UnrenderableDimension, "translates need d = 2 or 3");
  Occupancy occ(g, nx);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, double(scale));
  TorusCoverage tc;
  tc.samples = samples;
  tc.scale = scale;
  std::vector<double> p(d), y(d);
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& c : p) c = uni(rng);
    int count = 0;
    for_lattice(d, lattice_box, scale, [&](const std::vector<double>& off) {
      for (int i = 0; i < d; ++i) y[i] = p[i] - off[i];
      occ.hits(y, [&](int, double) { ++count; });
    });
    tc.histogram[count] += 1;
  }
  tc.fraction_one = samples ? double(tc.histogram[1]) / double(samples) : 0.0;
  return tc;
}

std::vector<int> torus_digits(const Gifs& g, const NatExt& nx, const std::vector<double>& p, long lattice_box) {
  const PisotField& f = *g.t.field();
  int d = f.degree();
  Occupancy occ(g, nx);
  std::vector<double> y(d);
  std::vector<int> out;
  const auto& pieces = g.t.pieces();
  for_lattice(d, lattice_box, 1, [&](const std::vector<double>& off) {
    for (int i = 0; i < d; ++i) y[i] = p[i] - off[i];
    occ.hits(y, [&](int, double t) {
      for (const auto& pc : pieces)
        if (t >= pc.lo.approx() && t < pc.hi.approx()) out.push_back(pc.digit);
    });
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace betatile
