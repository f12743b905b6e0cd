#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "betatile/error.hpp"
#include "betatile/sofic.hpp"

namespace betatile {

namespace {

struct SetHash {
  std::size_t operator()(const IntervalSet& s) const {
    std::size_t h = s.pieces().size();
    for (const auto& iv : s.pieces()) h = (h * 1000003u) ^ iv.lo.hash() ^ (iv.hi.hash() << 1);
    return h;
  }
};

struct SetEq {
  bool operator()(const IntervalSet& a, const IntervalSet& b) const { return a == b; }
};

}  // namespace

std::string digit_label(const BetaTransform& t, int digit) {
  const QBeta& a = t.digits()[digit];
  if (a.is_rational()) return rational_str(a.coords()[0]);
  return a.str();
}

SoficReport soficity_check(const BetaTransform& t0, std::size_t budget) {
  BetaTransform r = t0.side() == Side::Right ? t0 : t0.twin();
  BetaTransform l = r.twin();
  SoficReport rep;
  rep.sofic = true;
  for (const auto& p : r.pieces()) {
    try {
      rep.lower.push_back(expand(r, p.lo, budget));
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      rep.sofic = false;
      rep.witness = p.lo;
      return rep;
    }
    try {
      rep.upper.push_back(expand(l, p.hi, budget));
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      rep.sofic = false;
      rep.witness = p.hi;
      return rep;
    }
  }
  return rep;
}

int ShiftAutomaton::run(const std::vector<int>& w, int from) const {
  int s = from;
  for (int d : w) {
    if (s < 0) return -1;
    if (d < 0 || d >= int(next[s].size())) return -1;
    s = next[s][d];
  }
  return s;
}

bool ShiftAutomaton::accepts(const Word& u) const {
  int s = run(u.pre, start);
  if (s < 0) return false;
  if (u.per.empty()) return true;
  std::vector<bool> seen(size(), false);
  while (!seen[s]) {
    seen[s] = true;
    s = run(u.per, s);
    if (s < 0) return false;
  }
  return true;
}

ShiftAutomaton build_automaton(const BetaTransform& t, std::size_t max_states, std::size_t max_words) {
  const int na = int(t.digits().size());
  QBeta beta = QBeta::beta(t.field());

  // follower sets F_wa = beta (F_w cap X_a) - a
  std::vector<IntervalSet> sets{t.domain()};
  std::unordered_map<IntervalSet, int, SetHash, SetEq> index{{t.domain(), 0}};
  std::vector<std::vector<int>> next;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    next.emplace_back(na, -1);
    for (int a = 0; a < na; ++a) {
      IntervalSet s = sets[i].intersect(t.parts()[a]);
      if (s.empty()) continue;
      s = s.affine(beta, -t.digits()[a]);
      auto it = index.find(s);
      if (it == index.end()) {
        if (sets.size() >= max_states) fail(Errc::NotSofic, "follower sets exceed the state budget");
        it = index.emplace(s, int(sets.size())).first;
        sets.push_back(s);
      }
      next[i][a] = it->second;
    }
  }

  // Moore refinement
  int n = int(sets.size());
  std::vector<int> cls(n, 0);
  int ncls = 1;
  for (;;) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> nc(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> k{cls[i]};
      for (int a = 0; a < na; ++a) k.push_back(next[i][a] < 0 ? -1 : cls[next[i][a]]);
      nc[i] = sig.emplace(std::move(k), int(sig.size())).first->second;
    }
    int m = int(sig.size());
    cls.swap(nc);
    if (m == ncls) break;
    ncls = m;
  }
  // renumber classes in order of first appearance so the start state is 0
  std::vector<int> ren(ncls, -1);
  int cnt = 0;
  for (int i = 0; i < n; ++i)
    if (ren[cls[i]] < 0) ren[cls[i]] = cnt++;

  ShiftAutomaton au;
  au.raw_states = sets.size();
  au.start = 0;
  au.next.assign(cnt, std::vector<int>(na, -1));
  au.follower.resize(cnt);
  std::vector<bool> done(cnt, false);
  for (int i = 0; i < n; ++i) {
    int c = ren[cls[i]];
    if (done[c]) continue;
    done[c] = true;
    au.follower[c] = sets[i];
    for (int a = 0; a < na; ++a) au.next[c][a] = next[i][a] < 0 ? -1 : ren[cls[next[i][a]]];
  }

  // pair graph: finite type iff no cycle keeps two distinct states apart
  int m = cnt;
  auto pid = [m](int p, int q) { return p < q ? p * m + q : q * m + p; };
  std::vector<int> color(std::size_t(m) * m, 0), longest(std::size_t(m) * m, 0);
  bool cyclic = false;
  std::function<int(int, int)> dfs = [&](int p, int q) -> int {
    int id = pid(p, q);
    if (color[id] == 2) return longest[id];
    if (color[id] == 1) {
      cyclic = true;
      return 0;
    }
    color[id] = 1;
    int best = 0;
    for (int a = 0; a < na && !cyclic; ++a) {
      int p2 = au.next[p][a], q2 = au.next[q][a];
      if (p2 < 0 || q2 < 0 || p2 == q2) continue;
      best = std::max(best, 1 + dfs(p2, q2));
    }
    color[id] = 2;
    longest[id] = best;
    return best;
  };
  int lmax = -1;
  for (int p = 0; p < m && !cyclic; ++p)
    for (int q = p + 1; q < m && !cyclic; ++q) lmax = std::max(lmax, dfs(p, q));
  au.finite_type = !cyclic;
  if (!au.finite_type) return au;
  au.memory = lmax + 1;

  // minimal forbidden words a u b: a u and u b allowed, a u b not
  for (int a = 0; a < na; ++a)
    if (au.next[au.start][a] < 0) au.forbidden.push_back({a});
  std::vector<std::vector<int>> level{{}};
  std::size_t total = 0;
  for (int len = 1; len <= au.memory + 1; ++len) {
    std::vector<std::vector<int>> nl;
    for (const auto& w : level) {
      for (int b = 0; b < na; ++b) {
        std::vector<int> wb = w;
        wb.push_back(b);
        if (au.accepts(wb)) {
          nl.push_back(std::move(wb));
          continue;
        }
        if (w.empty()) continue;
        std::vector<int> ub(wb.begin() + 1, wb.end());
        if (au.accepts(ub)) au.forbidden.push_back(std::move(wb));
      }
    }
    total += nl.size();
    if (total > max_words) return au;
    level.swap(nl);
  }
  std::sort(au.forbidden.begin(), au.forbidden.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  au.forbidden_complete = true;
  return au;
}

std::string automaton_dot(const BetaTransform& t, const ShiftAutomaton& a) {
  std::ostringstream o;
  o << "digraph automaton {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < a.size(); ++s)
    o << "  s" << s << " [label=\"" << s << "\"" << (int(s) == a.start ? ", shape=doublecircle" : "") << "];\n";
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t d = 0; d < a.next[s].size(); ++d)
      if (a.next[s][d] >= 0)
        o << "  s" << s << " -> s" << a.next[s][d] << " [label=\"" << digit_label(t, int(d)) << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace betatile
