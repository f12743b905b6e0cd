#pragma once

#include <vector>

#include "betatile/numfield.hpp"

namespace betatile {

struct Interval {
  QBeta lo, hi;
};

// Finite union of half-open intervals, kept sorted with touching pieces merged.
// Whether the pieces are [lo, hi) or (lo, hi] is decided by the caller.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet of(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet affine(const QBeta& mul, const QBeta& add) const;  // x * mul + add, mul > 0
  bool contains_right(const QBeta& x) const;  // some lo <= x < hi
  bool contains_left(const QBeta& x) const;   // some lo < x <= hi
  QBeta measure(const FieldPtr& f) const;
  bool operator==(const IntervalSet& o) const;

 private:
  std::vector<Interval> iv_;
};

}  // namespace betatile
