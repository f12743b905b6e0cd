#include <numeric>
#include <unordered_map>

#include "betatile/betamap.hpp"
#include "betatile/error.hpp"

namespace betatile {

Expansion expand(const BetaTransform& t, const QBeta& x, std::size_t budget) {
  Expansion e;
  std::unordered_map<QBeta, int, QBetaHash> seen;
  std::vector<int> digits;
  QBeta cur = x;
  for (std::size_t n = 0;; ++n) {
    auto it = seen.find(cur);
    if (it != seen.end()) {
      int p = it->second;
      e.word.pre.assign(digits.begin(), digits.begin() + p);
      e.word.per.assign(digits.begin() + p, digits.end());
      return e;
    }
    if (n >= budget) fail(Errc::BudgetExceeded, "orbit of " + x.str() + " not periodic within budget");
    seen.emplace(cur, int(n));
    e.orbit.push_back(cur);
    StepResult s = step(t, cur);
    digits.push_back(s.digit);
    cur = std::move(s.image);
  }
}

QBeta word_value(const BetaTransform& t, const Word& w) {
  const FieldPtr& f = t.field();
  QBeta v(f);
  if (!w.per.empty()) {
    QBeta a(f);
    for (int i = int(w.per.size()) - 1; i >= 0; --i) a = (a + t.digits()[w.per[i]]).div_beta();
    QBeta one = QBeta::integer(f, 1);
    v = a / (one - one.pow_beta(-int(w.per.size())));
  }
  for (int i = int(w.pre.size()) - 1; i >= 0; --i) v = (v + t.digits()[w.pre[i]]).div_beta();
  return v;
}

Word normalize(Word w) {
  int n = int(w.per.size());
  for (int p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (int i = p; i < n && ok; ++i) ok = w.per[i] == w.per[i - p];
    if (ok) {
      w.per.resize(p);
      break;
    }
  }
  while (!w.pre.empty() && !w.per.empty() && w.pre.back() == w.per.back()) {
    int last = w.per.back();
    w.per.pop_back();
    w.per.insert(w.per.begin(), last);
    w.pre.pop_back();
  }
  return w;
}

Word tail(const Word& w, int k) {
  Word out;
  if (k < int(w.pre.size())) {
    out.pre.assign(w.pre.begin() + k, w.pre.end());
    out.per = w.per;
    return out;
  }
  int n = int(w.per.size());
  int r = (k - int(w.pre.size())) % n;
  out.per.assign(w.per.begin() + r, w.per.end());
  out.per.insert(out.per.end(), w.per.begin(), w.per.begin() + r);
  return out;
}

namespace {

int symbol(const Word& w, long i) {
  if (i < long(w.pre.size())) return w.pre[i];
  return w.per[(i - w.pre.size()) % w.per.size()];
}

}  // namespace

int lex_compare(const BetaTransform& t, const Word& a, const Word& b) {
  long len = long(std::max(a.pre.size(), b.pre.size())) + std::lcm(long(a.per.size()), long(b.per.size()));
  const auto& rank = t.rank();
  for (long i = 0; i < len; ++i) {
    int x = rank[symbol(a, i)], y = rank[symbol(b, i)];
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

Endpoints endpoint_expansions(const BetaTransform& t, std::size_t budget) {
  Endpoints e;
  BetaTransform right = t.side() == Side::Right ? t : t.twin();
  BetaTransform left = right.twin();
  for (size_t a = 0; a < t.digits().size(); ++a) {
    const auto& ps = t.parts()[a].pieces();
    e.lower.push_back(expand(right, ps.front().lo, budget));
    e.upper.push_back(expand(left, ps.back().hi, budget));
  }
  return e;
}

bool is_admissible(const BetaTransform& t, const Endpoints& e, const Word& u) {
  if (u.per.empty()) return false;
  int n = int(u.pre.size() + u.per.size());
  for (int k = 0; k < n; ++k) {
    Word s = tail(u, k);
    int a = symbol(s, 0);
    if (lex_compare(t, e.lower[a].word, s) > 0) return false;
    if (lex_compare(t, s, e.upper[a].word) >= 0) return false;
  }
  return true;
}

bool is_admissible(const BetaTransform& t, const Word& u, std::size_t budget) {
  if (!t.ordered() || t.side() != Side::Right) return is_admissible_by_value(t, u);
  return is_admissible(t, endpoint_expansions(t, budget), u);
}

bool is_admissible_by_value(const BetaTransform& t, const Word& u) {
  if (u.per.empty()) return false;
  int n = int(u.pre.size() + u.per.size());
  // tail values from the back: v_k = (u_k + v_{k+1}) / beta, v_n = value of the periodic part
  std::vector<QBeta> v(n + 1);
  v[n] = word_value(t, Word{{}, u.per});
  for (int k = n - 1; k >= 0; --k) v[k] = (v[k + 1] + t.digits()[symbol(u, k)]).div_beta();
  for (int k = 0; k < n; ++k) {
    const IntervalSet& part = t.parts()[symbol(u, k)];
    bool in = t.side() == Side::Right ? part.contains_right(v[k]) : part.contains_left(v[k]);
    if (!in) return false;
  }
  return true;
}

bool is_factor(const BetaTransform& t, const std::vector<int>& w) {
  if (w.empty()) return true;
  QBeta invb = QBeta::integer(t.field(), 1).div_beta();
  IntervalSet cur = t.parts()[w.back()];
  for (int i = int(w.size()) - 2; i >= 0; --i) {
    const QBeta& a = t.digits()[w[i]];
    cur = t.parts()[w[i]].intersect(cur.affine(invb, a * invb));
    if (cur.empty()) return false;
  }
  return !cur.empty();
}

}  // namespace betatile
