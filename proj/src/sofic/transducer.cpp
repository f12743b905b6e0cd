#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "betatile/error.hpp"
#include "betatile/sofic.hpp"

namespace betatile {

namespace {

using Cell = std::vector<std::int64_t>;

struct CellHash {
  std::size_t operator()(const Cell& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto v : k) {
      h ^= std::uint64_t(v);
      h *= 0x100000001b3ull;
    }
    return std::size_t(h);
  }
};

struct Grid {
  double s = 1;
  std::unordered_set<Cell, CellHash> cells;

  Grid(const TileCloud& c, double side) : s(side) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Cell k(c.x.size());
      for (size_t j = 0; j < c.x.size(); ++j) k[j] = std::int64_t(std::floor(c.x[j][i] / s));
      cells.insert(std::move(k));
    }
  }

  // some occupied cell within one step of q in every coordinate
  bool near(const std::vector<double>& q) const {
    int d = int(q.size());
    Cell base(d), k(d);
    for (int j = 0; j < d; ++j) base[j] = std::int64_t(std::floor(q[j] / s));
    int combos = 1;
    for (int j = 0; j < d; ++j) combos *= 3;
    for (int c = 0; c < combos; ++c) {
      int r = c;
      for (int j = 0; j < d; ++j) {
        k[j] = base[j] + (r % 3) - 1;
        r /= 3;
      }
      if (cells.count(k)) return true;
    }
    return false;
  }
};

// J_v meets J_w + delta in an interval of positive length
bool realizable(const VData& vd, int v, int w, const QBeta& delta) {
  const Interval& a = vd.J[v];
  const Interval& b = vd.J[w];
  QBeta lo = std::max(a.lo, b.lo + delta);
  QBeta hi = std::min(a.hi, b.hi + delta);
  return lo < hi;
}

QBeta diameter(const BetaTransform& t) {
  const auto& p = t.domain().pieces();
  return p.back().hi - p.front().lo;
}

struct Pruner {
  const Gifs& g;
  std::vector<double> bound;  // 2 max |Gamma_j(a)| / (1 - |beta_j|)
  std::vector<std::vector<double>> lo, hi;  // cloud boxes per vertex
  double err = 0;

  Pruner(const Gifs& gg, int depth) : g(gg), bound(conjugate_bounds(gg.t, 2.0)) {
    auto clouds = tile_clouds(g, depth);
    err = clouds.empty() ? 0.0 : clouds[0].err;
    for (const auto& c : clouds) {
      lo.emplace_back();
      hi.emplace_back();
      bounding_box(c, lo.back(), hi.back());
    }
  }

  bool gamma_ok(const QBeta& z) const {
    const PisotField& f = *g.t.field();
    for (int j = 1; j < f.degree(); ++j) {
      CBall c = f.gamma(z, j);
      if (std::abs(c.c) - c.r > bound[j] * (1 + 1e-12)) return false;
    }
    return true;
  }

  // Phi(z) in box(D_w) - box(D_v), inflated
  bool box_ok(const HPoint& pz, int v, int w) const {
    double slack = 2 * err + pz.err + 1e-12;
    for (size_t k = 0; k < pz.x.size(); ++k) {
      if (pz.x[k] < lo[w][k] - hi[v][k] - slack) return false;
      if (pz.x[k] > hi[w][k] - lo[v][k] + slack) return false;
    }
    return true;
  }
};

struct StateKey {
  QBeta delta;
  int v, w;
  bool operator==(const StateKey& o) const { return v == o.v && w == o.w && delta == o.delta; }
};

struct StateHash {
  std::size_t operator()(const StateKey& k) const { return k.delta.hash() * 31 + std::size_t(k.v) * 7919 + k.w; }
};

}  // namespace

int DiffTransducer::find(const QBeta& delta, int v, int w) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i].v == v && states[i].w == w && states[i].delta == delta) return int(i);
  return -1;
}

std::vector<QBeta> difference_candidates(const Gifs& g, int depth) {
  const FieldPtr& f = g.t.field();
  if (!g.t.digits_integral()) fail(Errc::DigitsNotIntegral, "differences need digits in Z[beta]");
  QBeta diam = diameter(g.t);
  std::vector<QBeta> box = lattice_points(f, -diam, diam, conjugate_bounds(g.t, 2.0));
  auto clouds = tile_clouds(g, depth);
  double err = clouds.empty() ? 0.0 : clouds[0].err;
  int nv = int(clouds.size());
  std::vector<Grid> grids;
  for (const auto& c : clouds) grids.emplace_back(c, 2 * err + 1e-12);
  std::vector<QBeta> out;
  for (const auto& z : box) {
    if (z.is_zero()) {
      out.push_back(z);
      continue;
    }
    HPoint pz = f->phi(z);
    bool keep = false;
    for (int v = 0; v < nv && !keep; ++v)
      for (int w = 0; w < nv && !keep; ++w) {
        if (!realizable(g.v, v, w, z)) continue;
        // Phi(z) = d' - d with d in D_v, d' in D_w
        const auto& cv = clouds[v];
        std::vector<double> q(cv.x.size());
        for (std::size_t i = 0; i < cv.size() && !keep; ++i) {
          for (size_t k = 0; k < q.size(); ++k) q[k] = cv.x[k][i] + pz.x[k];
          keep = grids[w].near(q);
        }
      }
    if (keep) out.push_back(z);
  }
  return out;
}

DiffTransducer build_transducer(const Gifs& g, const std::vector<QBeta>& candidates, int prune_depth,
                                std::size_t max_states) {
  const FieldPtr& f = g.t.field();
  Pruner pr(g, prune_depth);
  int nv = int(g.v.points.size());
  DiffTransducer d;
  std::unordered_map<StateKey, int, StateHash> index;

  // |delta| stays below diam(X) + max digit gap / (beta - 1) along every path
  const auto& dg = g.t.digits();
  QBeta gap(f);
  for (const auto& a : dg)
    for (const auto& b : dg) gap = std::max(gap, a - b);
  QBeta reach = diameter(g.t) + gap / (QBeta::beta(f) - QBeta::integer(f, 1));
  auto bounded = [&](const QBeta& z, int v, int w) {
    if (z > reach || -z > reach) return false;
    if (!pr.gamma_ok(z)) return false;
    return pr.box_ok(f->phi(z), v, w);
  };
  auto add = [&](QBeta z, int v, int w) {
    StateKey k{std::move(z), v, w};
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (d.states.size() >= max_states) fail(Errc::BudgetExceeded, "transducer exceeds the state budget");
    int id = int(d.states.size());
    d.states.push_back({k.delta, v, w});
    index.emplace(std::move(k), id);
    return id;
  };

  for (const auto& z : candidates) {
    if (z.is_zero()) continue;
    for (int v = 0; v < nv; ++v)
      for (int w = 0; w < nv; ++w)
        if (realizable(g.v, v, w, z) && bounded(z, v, w)) d.initial.push_back(add(z, v, w));
  }
  std::sort(d.initial.begin(), d.initial.end());
  d.initial.erase(std::unique(d.initial.begin(), d.initial.end()), d.initial.end());

  for (std::size_t s = 0; s < d.states.size(); ++s) {
    DiffState st = d.states[s];
    for (int e1 : g.out[st.v])
      for (int e2 : g.out[st.w]) {
        const auto& x = g.edges[e1];
        const auto& y = g.edges[e2];
        QBeta z = (st.delta + g.t.digits()[x.digit] - g.t.digits()[y.digit]).div_beta();
        if (!bounded(z, x.to, y.to)) continue;
        int to = add(std::move(z), x.to, y.to);
        d.edges.push_back({int(s), to, x.digit, y.digit});
      }
  }
  d.out.assign(d.states.size(), {});
  for (size_t e = 0; e < d.edges.size(); ++e) d.out[d.edges[e].from].push_back(int(e));
  return d;
}

namespace {

// iterative Tarjan
std::vector<int> scc_ids(const DiffTransducer& d, int& count) {
  int n = int(d.states.size());
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on(n, false);
  std::vector<std::pair<int, std::size_t>> call;
  int counter = 0;
  count = 0;
  for (int s0 = 0; s0 < n; ++s0) {
    if (idx[s0] >= 0) continue;
    call.push_back({s0, 0});
    idx[s0] = low[s0] = counter++;
    stack.push_back(s0);
    on[s0] = true;
    while (!call.empty()) {
      auto& [u, i] = call.back();
      if (i < d.out[u].size()) {
        int w = d.edges[d.out[u][i++]].to;
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = true;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[u] = std::min(low[u], idx[w]);
        }
        continue;
      }
      int uu = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[uu]);
      if (low[uu] == idx[uu]) {
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on[w] = false;
          comp[w] = count;
          if (w == uu) break;
        }
        ++count;
      }
    }
  }
  return comp;
}

void radius_bounds(const std::vector<std::vector<long>>& a, double& lo, double& hi) {
  int n = int(a.size());
  std::vector<double> x(n, 1.0), y(n);
  for (int it = 0; it < 500; ++it) {
    double m = 0;
    for (int i = 0; i < n; ++i) {
      double s = x[i];
      for (int j = 0; j < n; ++j) s += double(a[i][j]) * x[j];
      y[i] = s;
      m = std::max(m, s);
    }
    for (int i = 0; i < n; ++i) x[i] = y[i] / m;
  }
  lo = INFINITY;
  hi = 0;
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += double(a[i][j]) * x[j];
    double r = s / x[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
}

}  // namespace

TilingDecision decide_tiling(const Gifs& g, int prune_depth, std::size_t max_states) {
  SoficReport sr = soficity_check(g.t);
  if (!sr.sofic) fail(Errc::NotSofic, "endpoint expansions are not eventually periodic");
  TilingDecision dec;
  std::vector<QBeta> cand = difference_candidates(g, prune_depth);
  dec.candidates = cand.size();
  dec.transducer = build_transducer(g, cand, prune_depth, max_states);
  const DiffTransducer& d = dec.transducer;
  const PisotField& f = *g.t.field();

  int nc = 0;
  std::vector<int> comp = scc_ids(d, nc);
  std::vector<std::vector<int>> members(nc);
  for (size_t s = 0; s < comp.size(); ++s) members[comp[s]].push_back(int(s));
  std::vector<bool> hot(d.states.size(), false);
  for (int c = 0; c < nc; ++c) {
    const auto& ms = members[c];
    std::unordered_map<int, int> local;
    for (size_t i = 0; i < ms.size(); ++i) local[ms[i]] = int(i);
    std::vector<std::vector<long>> a(ms.size(), std::vector<long>(ms.size(), 0));
    bool internal = false;
    for (int s : ms)
      for (int e : d.out[s]) {
        auto it = local.find(d.edges[e].to);
        if (it == local.end()) continue;
        a[local[s]][it->second] += 1;
        internal = true;
      }
    if (!internal) continue;
    SccInfo info;
    info.states = ms;
    info.charpoly = charpoly(a);
    info.beta_eigen = divides(f.minpoly(), info.charpoly);
    radius_bounds(a, info.radius_lo, info.radius_hi);
    if (info.beta_eigen)
      for (int s : ms) hot[s] = true;
    dec.sccs.push_back(std::move(info));
  }

  // states that reach a beta component
  std::vector<std::vector<int>> in(d.states.size());
  for (const auto& e : d.edges) in[e.to].push_back(e.from);
  std::vector<int> work;
  for (size_t s = 0; s < hot.size(); ++s)
    if (hot[s]) work.push_back(int(s));
  while (!work.empty()) {
    int s = work.back();
    work.pop_back();
    for (int p : in[s])
      if (!hot[p]) {
        hot[p] = true;
        work.push_back(p);
      }
  }
  for (int s : d.initial)
    if (hot[s]) {
      dec.pairs.push_back(d.states[s]);
      dec.differences.push_back(d.states[s].delta);
    }
  std::sort(dec.differences.begin(), dec.differences.end());
  dec.differences.erase(std::unique(dec.differences.begin(), dec.differences.end()), dec.differences.end());
  dec.tiling = dec.pairs.empty();
  return dec;
}

std::string transducer_dot(const BetaTransform& t, const DiffTransducer& d) {
  std::ostringstream o;
  o << "digraph transducer {\n  rankdir=LR;\n";
  std::vector<bool> init(d.states.size(), false);
  for (int s : d.initial) init[s] = true;
  for (size_t s = 0; s < d.states.size(); ++s) {
    const auto& st = d.states[s];
    o << "  s" << s << " [label=\"" << st.delta.str() << "; " << st.v << "," << st.w << "\""
      << (init[s] ? ", shape=box" : "") << "];\n";
  }
  for (const auto& e : d.edges)
    o << "  s" << e.from << " -> s" << e.to << " [label=\"" << digit_label(t, e.a) << "|" << digit_label(t, e.b)
      << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace betatile
