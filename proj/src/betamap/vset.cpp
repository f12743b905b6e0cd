#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "betatile/betamap.hpp"
#include "betatile/error.hpp"

namespace betatile {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<QBeta, QBeta>& p) const {
    return p.first.hash() * 1000003u ^ p.second.hash();
  }
};

}  // namespace

int VData::index_of(const QBeta& x) const {
  int lo = 0, hi = int(points.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (points[mid] <= x)
      lo = mid + 1;
    else
      hi = mid;
  }
  int k = lo - 1;
  if (k < 0 || !(x < J[k].hi)) return -1;
  return k;
}

VData compute_v(const BetaTransform& t0, std::size_t budget) {
  const BetaTransform t = t0.side() == Side::Right ? t0 : t0.twin();
  const BetaTransform tl = t.twin();
  VData out;
  std::vector<QBeta> pts;
  for (const auto& c : t.domain().pieces()) pts.push_back(c.lo);

  const auto& ps = t.pieces();
  std::size_t steps = 0;
  for (size_t i = 0; i + 1 < ps.size(); ++i) {
    if (!(ps[i].hi == ps[i + 1].lo)) continue;
    const QBeta& x = ps[i + 1].lo;
    Discontinuity dc{x, 0};
    QBeta u = x, w = x;
    std::unordered_set<std::pair<QBeta, QBeta>, PairHash> seen;
    for (int k = 1;; ++k) {
      if (++steps > budget) fail(Errc::BudgetExceeded, "orbits of discontinuities exceed the budget");
      u = step(t, u).image;
      w = step(tl, w).image;
      if (u == w) {
        dc.m = k;
        break;
      }
      pts.push_back(u);
      if (t.contains(w)) pts.push_back(w);
      if (!seen.insert({u, w}).second) break;  // orbits never meet, all points collected
    }
    out.disc.push_back(dc);
  }

  std::sort(pts.begin(), pts.end());
  for (auto& p : pts)
    if (out.points.empty() || !(out.points.back() == p)) out.points.push_back(p);

  const auto& comps = t.domain().pieces();
  size_t c = 0;
  for (size_t i = 0; i < out.points.size(); ++i) {
    const QBeta& p = out.points[i];
    while (c < comps.size() && !(p < comps[c].hi)) ++c;
    if (c == comps.size() || p < comps[c].lo) fail(Errc::Internal, "V point outside X");
    QBeta end = comps[c].hi;
    if (i + 1 < out.points.size() && out.points[i + 1] < end) end = out.points[i + 1];
    out.J.push_back({p, end});
  }
  return out;
}

std::vector<TransferEdge> transfer_edges(const BetaTransform& t0, const VData& v) {
  const BetaTransform t = t0.side() == Side::Right ? t0 : t0.twin();
  std::vector<TransferEdge> edges;
  for (size_t i = 0; i < v.points.size(); ++i) {
    for (size_t a = 0; a < t.digits().size(); ++a) {
      QBeta y = (v.points[i] + t.digits()[a]).div_beta();
      if (t.digit_of(y) != int(a)) continue;
      int j = v.index_of(y);
      if (j < 0) fail(Errc::Internal, "preimage inside X but outside every J");
      edges.push_back({int(i), j, int(a)});
    }
  }
  return edges;
}

namespace {

// kernel of an n x n matrix over Q(beta), one vector per free column
std::vector<std::vector<QBeta>> kernel(std::vector<std::vector<QBeta>> m, const FieldPtr& f) {
  int n = int(m.size());
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < n && row < n; ++c) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (!m[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    QBeta inv = m[row][c].inverse();
    for (int k = c; k < n; ++k) m[row][k] = m[row][k] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      QBeta fct = m[r][c];
      for (int k = c; k < n; ++k)
        if (!m[row][k].is_zero()) m[r][k] = m[r][k] - fct * m[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  std::vector<bool> is_piv(n, false);
  for (int c : pivcol) is_piv[c] = true;
  std::vector<std::vector<QBeta>> basis;
  for (int fc = 0; fc < n; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<QBeta> v(n, QBeta(f));
    v[fc] = QBeta::integer(f, 1);
    for (size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = -m[r][fc];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

Density invariant_density(const BetaTransform& t, const VData& v) {
  const FieldPtr& f = t.field();
  int n = int(v.points.size());
  Density out;
  out.B.assign(n, std::vector<int>(n, 0));
  for (const auto& e : transfer_edges(t, v)) out.B[e.from][e.to] += 1;

  std::vector<QBeta> len;
  for (const auto& j : v.J) len.push_back(j.hi - j.lo);

  std::vector<std::vector<QBeta>> m(n, std::vector<QBeta>(n, QBeta(f)));
  QBeta beta = QBeta::beta(f);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = QBeta::integer(f, out.B[i][j]);
    m[i][i] = m[i][i] - beta;
  }
  auto ker = kernel(m, f);
  if (ker.empty()) fail(Errc::NoFixedPoint, "beta is not an eigenvalue of the transfer matrix");

  if (ker.size() == 1) {
    std::vector<QBeta> h = ker[0];
    QBeta mass(f);
    for (int i = 0; i < n; ++i) mass = mass + h[i] * len[i];
    if (mass.sign() == 0) fail(Errc::NoFixedPoint, "fixed vector has zero mass");
    QBeta inv = mass.inverse();
    bool nonneg = true;
    for (auto& x : h) {
      x = x * inv;
      if (x.sign() < 0) nonneg = false;
    }
    if (nonneg) {
      out.h = h;
      out.exact = true;
      for (int i = 0; i < n; ++i) {
        out.h_approx.push_back(h[i].approx());
        out.support.push_back(!h[i].is_zero());
      }
    }
  }
  if (!out.exact) {
    // several invariant components: Perron vector by power iteration
    double b = f->beta_approx();
    std::vector<double> h(n, 1.0), nh(n);
    for (int it = 0; it < 20000; ++it) {
      for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += out.B[i][j] * h[j];
        nh[i] = s / b;
      }
      double mass = 0;
      for (int i = 0; i < n; ++i) mass += nh[i] * len[i].approx();
      for (int i = 0; i < n; ++i) nh[i] /= mass;
      std::swap(h, nh);
    }
    out.h_approx = h;
    for (int i = 0; i < n; ++i) out.support.push_back(h[i] > 1e-9);
  }
  double res = 0, b = f->beta_approx();
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += out.B[i][j] * out.h_approx[j];
    res = std::max(res, std::abs(out.h_approx[i] - s / b));
  }
  out.residual = res;
  return out;
}

BetaTransform restrict_to_support(const BetaTransform& t0, const VData& v, const Density& h) {
  const BetaTransform t = t0.side() == Side::Right ? t0 : t0.twin();
  std::vector<Interval> sup;
  for (size_t i = 0; i < v.J.size(); ++i)
    if (h.positive(int(i))) sup.push_back(v.J[i]);
  IntervalSet S = IntervalSet::of(sup);
  std::vector<QBeta> digits;
  std::vector<std::vector<Interval>> parts;
  for (size_t a = 0; a < t.digits().size(); ++a) {
    IntervalSet p = t.parts()[a].intersect(S);
    if (p.empty()) continue;
    digits.push_back(t.digits()[a]);
    parts.push_back(p.pieces());
  }
  return BetaTransform::build(t.field(), digits, parts, Side::Right);
}

}  // namespace betatile
