#include <array>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "betatile/error.hpp"
#include "betatile/kernels.hpp"
#include "betatile/tiling.hpp"

namespace betatile {

namespace {

constexpr int kMaxH = 5;
using CellKey = std::array<std::int64_t, kMaxH>;

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto v : k) {
      h ^= std::uint64_t(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return std::size_t(h ^ (h >> 31));
  }
};

void cell_keys(const std::vector<std::vector<double>>& x, double s, std::vector<CellKey>& keys) {
  std::size_t n = x.empty() ? 0 : x[0].size();
  keys.assign(n, CellKey{});
  std::vector<std::int64_t> buf(n);
  for (size_t c = 0; c < x.size(); ++c) {
    kernels::cell_index(x[c].data(), buf.data(), n, 1.0 / s);
    for (std::size_t i = 0; i < n; ++i) keys[i][c] = buf[i];
  }
}

// keep the first point of every occupied cell
void dedup(std::vector<std::vector<double>>& x, double s) {
  std::vector<CellKey> keys;
  cell_keys(x, s, keys);
  std::unordered_set<CellKey, CellHash> seen;
  seen.reserve(keys.size() * 2);
  std::size_t w = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!seen.insert(keys[i]).second) continue;
    for (auto& col : x) col[w] = col[i];
    ++w;
  }
  for (auto& col : x) col.resize(w);
}

// append M * src + phi to dst
void map_into(const PisotField& f, const std::vector<std::vector<double>>& src, const HPoint& phi,
              std::vector<std::vector<double>>& dst) {
  std::size_t n = src.empty() ? 0 : src[0].size();
  std::size_t base = dst[0].size();
  for (auto& col : dst) col.resize(base + n);
  for (const auto& b : f.blocks()) {
    const auto& z = f.conjugates()[b.conj].c;
    if (b.complex) {
      kernels::rot_shift(src[b.offset].data(), src[b.offset + 1].data(), dst[b.offset].data() + base,
                         dst[b.offset + 1].data() + base, n, z.real(), z.imag(), phi.x[b.offset],
                         phi.x[b.offset + 1]);
    } else {
      kernels::scale_shift(src[b.offset].data(), dst[b.offset].data() + base, n, z.real(), phi.x[b.offset]);
    }
  }
}

}  // namespace

std::vector<TileCloud> tile_clouds(const Gifs& g, int depth) {
  const PisotField& f = *g.t.field();
  int dim = f.hdim();
  if (dim > kMaxH) fail(Errc::UnrenderableDimension, "clouds support degree <= 6");
  int nv = int(g.v.points.size());
  double rho = f.rho();
  double sq = std::sqrt(double(dim));

  std::vector<TileCloud> cur(nv);
  for (int v = 0; v < nv; ++v) {
    cur[v].vertex = v;
    cur[v].x.assign(dim, std::vector<double>(1, 0.0));
  }

  // numeric slack per level: digit images, conjugate radii, rounding
  double phi_err = 0, conj_err = 0;
  for (const auto& p : g.phi_digit) phi_err = std::max(phi_err, p.err);
  for (int j = 1; j < f.degree(); ++j) conj_err = std::max(conj_err, f.conjugates()[j].r);
  double u = std::numeric_limits<double>::epsilon();
  double num_step = phi_err + 4 * conj_err * g.C + 8 * u * g.C * sq;

  double target = g.C * std::pow(rho, depth) / 4;
  double snap = 0, num = 0;
  for (int lvl = 1; lvl <= depth; ++lvl) {
    double cell = target * std::pow(0.5, depth - lvl + 1) / (std::pow(rho, depth - lvl) * sq);
    cell = std::max(cell, (g.C + 1) * 1e-14);  // keep cell indices inside int64
    std::vector<TileCloud> nxt(nv);
    for (int v = 0; v < nv; ++v) {
      nxt[v].vertex = v;
      nxt[v].x.assign(dim, {});
      for (int e : g.out[v]) {
        const auto& ed = g.edges[e];
        map_into(f, cur[ed.to].x, g.phi_digit[ed.digit], nxt[v].x);
      }
      dedup(nxt[v].x, cell);
    }
    cur.swap(nxt);
    snap = rho * snap + cell * sq;
    num = rho * num + num_step;
  }
  double err = g.C * std::pow(rho, depth) + snap + num;
  for (auto& c : cur) {
    c.depth = depth;
    c.err = err;
  }
  return cur;
}

TileCloud tile_cloud(const Gifs& g, int vertex, int depth) { return tile_clouds(g, depth).at(vertex); }

TileCloud refine_once(const Gifs& g, const std::vector<TileCloud>& clouds, int vertex) {
  const PisotField& f = *g.t.field();
  TileCloud out;
  out.vertex = vertex;
  out.depth = clouds[vertex].depth + 1;
  out.x.assign(f.hdim(), {});
  for (int e : g.out[vertex]) {
    const auto& ed = g.edges[e];
    map_into(f, clouds[ed.to].x, g.phi_digit[ed.digit], out.x);
  }
  out.err = clouds[vertex].err * f.rho();
  return out;
}

std::size_t box_count(const TileCloud& c, double s) {
  std::vector<CellKey> keys;
  cell_keys(c.x, s, keys);
  std::unordered_set<CellKey, CellHash> seen(keys.begin(), keys.end());
  return seen.size();
}

void bounding_box(const TileCloud& c, std::vector<double>& lo, std::vector<double>& hi) {
  int dim = int(c.x.size());
  lo.assign(dim, std::numeric_limits<double>::infinity());
  hi.assign(dim, -std::numeric_limits<double>::infinity());
  for (int k = 0; k < dim; ++k)
    for (double v : c.x[k]) {
      lo[k] = std::min(lo[k], v);
      hi[k] = std::max(hi[k], v);
    }
}

NatExt natext_domain(const Gifs& g, const Density& h, int depth) {
  const PisotField& f = *g.t.field();
  NatExt nx;
  nx.depth = depth;
  nx.clouds = tile_clouds(g, depth);
  nx.J = g.v.J;
  nx.err = nx.clouds.empty() ? 0.0 : nx.clouds[0].err;
  double s = 2 * nx.err;
  double cell_vol = std::pow(s, f.hdim());
  nx.area = 0;
  for (size_t v = 0; v < nx.clouds.size(); ++v) {
    double m = h.positive(int(v)) ? double(box_count(nx.clouds[v], s)) * cell_vol : 0.0;
    nx.measure.push_back(m);
    nx.area += (nx.J[v].hi - nx.J[v].lo).approx() * m * f.frame_det();
  }
  return nx;
}

}  // namespace betatile
