#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betatile/intervals.hpp"
#include "betatile/numfield.hpp"

namespace betatile {

enum class Side { Right, Left };

struct Piece {
  QBeta lo, hi;
  int digit = 0;
};

// T x = beta x - a on X_a. Pieces are [lo, hi) for Side::Right and (lo, hi] for Side::Left.
class BetaTransform {
 public:
  static BetaTransform build(FieldPtr f, std::vector<QBeta> digits, std::vector<std::vector<Interval>> parts,
                             Side side = Side::Right);

  const FieldPtr& field() const { return f_; }
  const std::vector<QBeta>& digits() const { return digits_; }
  const std::vector<IntervalSet>& parts() const { return parts_; }
  Side side() const { return side_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const IntervalSet& domain() const { return domain_; }
  // digits ranked by value
  const std::vector<int>& rank() const { return rank_; }

  int piece_of(const QBeta& x) const;  // -1 outside the domain
  int digit_of(const QBeta& x) const;
  bool contains(const QBeta& x) const { return piece_of(x) >= 0; }
  bool digits_integral() const;
  // one interval per digit, interval order equal to digit order
  bool ordered() const;
  BetaTransform twin() const;

 private:
  FieldPtr f_;
  std::vector<QBeta> digits_;
  std::vector<IntervalSet> parts_;
  Side side_ = Side::Right;
  std::vector<Piece> pieces_;
  IntervalSet domain_;
  std::vector<int> rank_;
};

struct StepResult {
  int digit = -1;
  QBeta image;
};

StepResult step(const BetaTransform& t, const QBeta& x);

// Eventually periodic digit word, digits as indices into t.digits().
struct Word {
  std::vector<int> pre, per;
  bool operator==(const Word& o) const { return pre == o.pre && per == o.per; }
};

struct Expansion {
  Word word;
  std::vector<QBeta> orbit;  // x, Tx, ..., first repeat excluded
  int preperiod() const { return int(word.pre.size()); }
  int period() const { return int(word.per.size()); }
};

Expansion expand(const BetaTransform& t, const QBeta& x, std::size_t budget = 100000);
QBeta word_value(const BetaTransform& t, const Word& w);
// canonical form: shortest period, shortest preperiod
Word normalize(Word w);
// lexicographic comparison by digit value, -1/0/1
int lex_compare(const BetaTransform& t, const Word& a, const Word& b);
// tail sigma^k(w)
Word tail(const Word& w, int k);

// b(l_a) and b~(r_a) for every digit of an ordered transform
struct Endpoints {
  std::vector<Expansion> lower, upper;
};
Endpoints endpoint_expansions(const BetaTransform& t, std::size_t budget = 100000);

// b(l_a) <= sigma^k u < b~(r_a) on all tails; lexicographic when t.ordered(), value test otherwise
bool is_admissible(const BetaTransform& t, const Word& u, std::size_t budget = 100000);
bool is_admissible(const BetaTransform& t, const Endpoints& e, const Word& u);
bool is_admissible_by_value(const BetaTransform& t, const Word& u);
// nonempty cylinder: some x in X has b(x) starting with w
bool is_factor(const BetaTransform& t, const std::vector<int>& w);

struct Discontinuity {
  QBeta x;
  int m = 0;  // 0 when the two orbits never meet
};

struct VData {
  std::vector<QBeta> points;  // sorted
  std::vector<Interval> J;    // J[i] = [points[i], next)
  std::vector<Discontinuity> disc;
  int index_of(const QBeta& x) const;  // J containing x, -1 outside
};

VData compute_v(const BetaTransform& t, std::size_t budget = 100000);

// (x, x', a) with (x + a)/beta in X_a and in J_x'
struct TransferEdge {
  int from = 0, to = 0, digit = 0;
};
std::vector<TransferEdge> transfer_edges(const BetaTransform& t, const VData& v);

struct Density {
  std::vector<QBeta> h;           // exact weights, empty when not representable
  std::vector<double> h_approx;   // normalised: sum h * |J| = 1
  std::vector<std::vector<int>> B;  // edge counts, h = B h / beta
  std::vector<bool> support;
  bool exact = false;
  double residual = 0.0;
  bool positive(int i) const { return support[i]; }
};

Density invariant_density(const BetaTransform& t, const VData& v);
BetaTransform restrict_to_support(const BetaTransform& t, const VData& v, const Density& h);

// presets
BetaTransform preset_greedy(const FieldPtr& f);
BetaTransform preset_lazy(const FieldPtr& f);
BetaTransform preset_pedicini(const FieldPtr& f, const std::vector<QBeta>& digits);
BetaTransform preset_linear_mod1(const FieldPtr& f, const QBeta& alpha);
BetaTransform preset_minimal_weight(const FieldPtr& f, const QBeta& alpha);
BetaTransform preset_symmetric(const FieldPtr& f);

long ceil_of(const QBeta& x);
long floor_of(const QBeta& x);

}  // namespace betatile
