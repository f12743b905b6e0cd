#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "betatile/error.hpp"
#include "betatile/tiling.hpp"

namespace betatile {

namespace {

BetaTransform right_of(const BetaTransform& t) { return t.side() == Side::Right ? t : t.twin(); }

// odometer over the integer box [-b_i, b_i]
template <class F>
void for_box(const std::vector<long>& b, F&& fn) {
  int d = int(b.size());
  std::vector<long> v(d);
  for (int i = 0; i < d; ++i) v[i] = -b[i];
  for (;;) {
    fn(v);
    int i = 0;
    while (i < d && v[i] == b[i]) {
      v[i] = -b[i];
      ++i;
    }
    if (i == d) return;
    ++v[i];
  }
}

double conj_abs_low(const CBall& z) { return std::max(0.0, std::abs(z.c) - z.r); }

// |Gamma_j(x)| from the H coordinates of Psi(x)
double gamma_abs(const std::vector<double>& h, const HBlock& b) {
  if (b.complex) return 0.5 * std::hypot(h[b.offset], h[b.offset + 1]);
  return std::abs(h[b.offset]);
}

QBeta from_lattice(const PisotField& f, const std::vector<long>& v) {
  std::vector<mpq_class> q;
  for (long c : v) q.push_back(mpq_class(c));
  return f.pi1(q);
}

}  // namespace

int PeriodicSet::find(const QBeta& x) const {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i].x == x) return int(i);
  return -1;
}

std::vector<double> conjugate_bounds(const BetaTransform& t, double factor) {
  const PisotField& f = *t.field();
  std::vector<double> b(f.degree(), 0.0);
  for (int j = 1; j < f.degree(); ++j) {
    double m = 0;
    for (const auto& a : t.digits()) m = std::max(m, abs_up(f.gamma(a, j)));
    b[j] = factor * m / (1.0 - abs_up(f.conjugates()[j]));
  }
  return b;
}

std::vector<QBeta> lattice_points(const FieldPtr& fp, const QBeta& lo, const QBeta& hi,
                                  const std::vector<double>& bound, std::size_t budget) {
  const PisotField& f = *fp;
  int d = f.degree();
  double xmax = std::max(std::abs(lo.approx()), std::abs(hi.approx()));
  std::vector<long> box(d);
  double vol = 1;
  for (int i = 0; i < d; ++i) {
    double s = xmax * (std::abs(f.eigenvectors()[0][i].c) + f.eigenvectors()[0][i].r);
    for (int j = 1; j < d; ++j) s += bound[j] * (std::abs(f.eigenvectors()[j][i].c) + f.eigenvectors()[j][i].r);
    box[i] = long(std::floor(s * (1 + 1e-9) + 1e-9));
    vol *= double(2 * box[i] + 1);
  }
  if (vol > double(budget)) fail(Errc::BudgetExceeded, "lattice box too large");
  double lo_d = lo.approx(), hi_d = hi.approx();
  double slack = 1e-7 * (1 + xmax);
  std::vector<QBeta> out;
  for_box(box, [&](const std::vector<long>& v) {
    std::vector<double> y(v.begin(), v.end());
    double t;
    std::vector<double> h = f.from_ambient_h(y, t);
    if (t < lo_d - slack || t > hi_d + slack) return;
    for (const auto& b : f.blocks())
      if (gamma_abs(h, b) > bound[b.conj] * (1 + 1e-9) + 1e-9) return;
    QBeta x = from_lattice(f, v);
    if (x < lo || x > hi) return;
    for (const auto& b : f.blocks())
      if (conj_abs_low(f.gamma(x, b.conj)) > bound[b.conj]) return;
    out.push_back(std::move(x));
  });
  std::sort(out.begin(), out.end());
  return out;
}

PeriodicSet purely_periodic_points(const BetaTransform& t0, std::size_t budget) {
  BetaTransform t = right_of(t0);
  const FieldPtr& f = t.field();
  const auto& dom = t.domain().pieces();
  std::vector<QBeta> cand = lattice_points(f, dom.front().lo, dom.back().hi, conjugate_bounds(t), budget);
  PeriodicSet ps;
  std::vector<QBeta> in;
  for (auto& x : cand)
    if (t.contains(x)) in.push_back(x);
  ps.candidates = in.size();
  std::unordered_map<QBeta, int, QBetaHash> idx;
  for (size_t i = 0; i < in.size(); ++i) idx.emplace(in[i], int(i));
  int n = int(in.size());
  std::vector<int> next(n, -1), dig(n, -1);
  for (int i = 0; i < n; ++i) {
    StepResult s = step(t, in[i]);
    dig[i] = s.digit;
    auto it = idx.find(s.image);
    if (it != idx.end()) next[i] = it->second;
  }
  // nodes on cycles of the functional graph
  std::vector<int> state(n, 0);
  std::vector<bool> on_cycle(n, false);
  for (int i = 0; i < n; ++i) {
    if (state[i]) continue;
    std::vector<int> path;
    int u = i;
    while (u >= 0 && state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = next[u];
    }
    if (u >= 0 && state[u] == 1) {
      for (int w = u;;) {
        on_cycle[w] = true;
        w = next[w];
        if (w == u) break;
      }
    }
    for (int w : path) state[w] = 2;
  }
  for (int i = 0; i < n; ++i) {
    if (!on_cycle[i]) continue;
    PeriodicPoint p{in[i], {}};
    int u = i;
    do {
      p.cycle.push_back(dig[u]);
      u = next[u];
    } while (u != i);
    ps.points.push_back(std::move(p));
  }
  std::sort(ps.points.begin(), ps.points.end(), [](const PeriodicPoint& a, const PeriodicPoint& b) { return a.x < b.x; });
  return ps;
}

FCheck check_f(const PeriodicSet& p) { return {p.points.size() == 1, p.points.size()}; }

namespace {

QBeta iterate(const BetaTransform& t, QBeta x, int k) {
  for (int i = 0; i < k; ++i) x = step(t, x).image;
  return x;
}

// owners at a given k, empty when the conditions of the membership criterion fail
bool owners_at(const BetaTransform& t, const PeriodicSet& p, const QBeta& zk, std::vector<QBeta>& owners, int k) {
  QBeta zk1 = zk.div_beta();
  owners.clear();
  for (const auto& pp : p.points) {
    const QBeta& y = pp.x;
    int pc = t.piece_of(y);
    if (!(y + zk1 < t.pieces()[pc].hi)) return false;
    if (!t.contains(y + zk)) return false;
  }
  for (const auto& pp : p.points) owners.push_back(iterate(t, pp.x + zk, k));
  std::sort(owners.begin(), owners.end());
  owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
  return true;
}

}  // namespace

Membership tiles_containing(const BetaTransform& t0, const PeriodicSet& p, const QBeta& z, int max_k) {
  BetaTransform t = right_of(t0);
  if (z.sign() < 0) fail(Errc::OutOfDomain, "membership needs z >= 0");
  if (!z.is_integral()) fail(Errc::DigitsNotIntegral, "membership needs z in Z[beta]");
  if (p.points.empty()) fail(Errc::Internal, "no purely periodic points");
  QBeta zk = z;
  Membership m;
  for (int k = 0; k <= max_k; ++k, zk = zk.div_beta()) {
    if (!owners_at(t, p, zk, m.owners, k)) continue;
    m.k = k;
    long L = 1;
    for (const auto& pp : p.points) L = std::lcm(L, long(pp.cycle.size()));
    std::vector<QBeta> again;
    if (!owners_at(t, p, z.pow_beta(-(k + int(L))), again, k + int(L)) || again.size() != m.owners.size())
      fail(Errc::Internal, "owner set changed under a period shift");
    for (size_t i = 0; i < again.size(); ++i)
      if (!(again[i] == m.owners[i])) fail(Errc::Internal, "owner set changed under a period shift");
    return m;
  }
  fail(Errc::BudgetExceeded, "no admissible k for the membership criterion");
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<QBeta>& v) const {
    std::size_t h = 0;
    for (const auto& x : v) h = h * 1000003u ^ x.hash();
    return h;
  }
};

// nonnegative z in [0, eps) by increasing max-norm of Psi(z)
class ZStream {
 public:
  ZStream(const PisotField& f, const QBeta& eps) : f_(f), eps_(eps), eps_d_(eps.approx()) {}

  bool next(QBeta& z) {
    for (;;) {
      if (pos_ < shell_.size()) {
        z = shell_[pos_++];
        return true;
      }
      if (h_ > 4000) return false;
      fill(h_++);
    }
  }

 private:
  void fill(long h) {
    shell_.clear();
    pos_ = 0;
    int d = f_.degree();
    std::vector<long> b(d, h);
    for_box(b, [&](const std::vector<long>& v) {
      long m = 0;
      for (long c : v) m = std::max(m, std::labs(c));
      if (m != h) return;
      std::vector<double> y(v.begin(), v.end());
      double t;
      f_.from_ambient_h(y, t);
      if (t < -1e-9 || t > eps_d_ + 1e-9) return;
      QBeta z = from_lattice(f_, v);
      if (z.sign() < 0 || !(z < eps_)) return;
      shell_.push_back(std::move(z));
    });
    std::sort(shell_.begin(), shell_.end());
  }

  const PisotField& f_;
  QBeta eps_;
  double eps_d_;
  long h_ = 0;
  std::vector<QBeta> shell_;
  std::size_t pos_ = 0;
};

// smallest k with T^k(y + z) = T^k(x + z) = x, -1 if never
int merge_step(const BetaTransform& t, const QBeta& y, const QBeta& x, const QBeta& z) {
  QBeta u = y + z, w = x + z;
  if (!t.contains(u) || !t.contains(w)) return -1;
  std::unordered_set<std::vector<QBeta>, VecHash> seen;
  for (int k = 0;; ++k) {
    if (u == x && w == x) return k;
    if (!seen.insert({u, w}).second) return -1;
    u = step(t, u).image;
    w = step(t, w).image;
  }
}

}  // namespace

WCheck check_w(const BetaTransform& t0, const PeriodicSet& p, std::size_t budget) {
  BetaTransform t = right_of(t0);
  const FieldPtr& f = t.field();
  WCheck w;
  if (p.points.empty()) fail(Errc::Internal, "no purely periodic points");
  bool first = true;
  for (const auto& pp : p.points) {
    QBeta gap = (t.pieces()[t.piece_of(pp.x)].hi - pp.x).mul_beta();
    if (first || gap < w.epsilon) w.epsilon = gap;
    first = false;
  }
  int np = int(p.points.size());

  // common translation: orbits of all y + z merge into one point of P at the same time
  {
    ZStream zs(*f, w.epsilon);
    QBeta z;
    while (w.tried < budget / 2 && zs.next(z)) {
      ++w.tried;
      std::vector<QBeta> cur;
      bool ok = true;
      for (const auto& pp : p.points) {
        cur.push_back(pp.x + z);
        if (!t.contains(cur.back())) ok = false;
      }
      if (!ok) continue;
      std::unordered_set<std::vector<QBeta>, VecHash> seen;
      for (int k = 0;; ++k) {
        bool all = true;
        for (int i = 1; i < np && all; ++i) all = cur[i] == cur[0];
        if (all && p.find(cur[0]) >= 0) {
          w.status = WStatus::Holds;
          w.common = true;
          w.x = cur[0];
          for (const auto& pp : p.points) w.witnesses.push_back({pp.x, z, k});
          return w;
        }
        if (all || !seen.insert(cur).second) break;
        for (auto& c : cur) c = step(t, c).image;
      }
    }
  }

  // one translation per y
  for (const auto& xp : p.points) {
    std::vector<std::optional<WWitness>> found(np);
    int covered = 0;
    ZStream zs(*f, w.epsilon);
    QBeta z;
    while (w.tried < budget && zs.next(z)) {
      ++w.tried;
      for (int i = 0; i < np; ++i) {
        if (found[i]) continue;
        int k = merge_step(t, p.points[i].x, xp.x, z);
        if (k >= 0) {
          found[i] = WWitness{p.points[i].x, z, k};
          ++covered;
        }
      }
      if (covered == np) {
        w.status = WStatus::Holds;
        w.x = xp.x;
        for (auto& o : found) w.witnesses.push_back(*o);
        return w;
      }
    }
  }
  w.status = WStatus::FailsByBudget;
  return w;
}

CoveringEstimate covering_degree_estimate(const BetaTransform& t, const PeriodicSet& p,
                                          const std::vector<QBeta>& samples) {
  CoveringEstimate c;
  bool first = true;
  for (const auto& z : samples) {
    std::size_t n = tiles_containing(t, p, z).owners.size();
    c.counts.push_back(n);
    c.histogram[n] += 1;
    if (first || n < c.min) c.min = n;
    if (first || n > c.max) c.max = n;
    first = false;
  }
  return c;
}

std::vector<QBeta> default_samples(const BetaTransform& t, std::size_t n) {
  const FieldPtr& f = t.field();
  std::vector<QBeta> out;
  for (long h = 0; out.size() < n && h < 64; ++h) {
    std::vector<QBeta> shell;
    for_box(std::vector<long>(f->degree(), h), [&](const std::vector<long>& v) {
      long m = 0;
      for (long c : v) m = std::max(m, std::labs(c));
      if (m != h) return;
      QBeta z = from_lattice(*f, v);
      if (z.sign() >= 0) shell.push_back(std::move(z));
    });
    std::sort(shell.begin(), shell.end());
    for (auto& z : shell) {
      if (out.size() >= n) break;
      out.push_back(std::move(z));
    }
  }
  return out;
}

}  // namespace betatile
