#include <algorithm>

#include "betatile/intervals.hpp"

namespace betatile {

IntervalSet IntervalSet::of(std::vector<Interval> pieces) {
  IntervalSet s;
  std::vector<Interval> keep;
  for (auto& p : pieces)
    if (p.lo < p.hi) keep.push_back(std::move(p));
  std::sort(keep.begin(), keep.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (auto& p : keep) {
    if (!s.iv_.empty() && p.lo <= s.iv_.back().hi) {
      if (p.hi > s.iv_.back().hi) s.iv_.back().hi = p.hi;
    } else {
      s.iv_.push_back(std::move(p));
    }
  }
  return s;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all = iv_;
  all.insert(all.end(), o.iv_.begin(), o.iv_.end());
  return of(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < iv_.size() && j < o.iv_.size()) {
    const Interval& a = iv_[i];
    const Interval& b = o.iv_[j];
    const QBeta& lo = a.lo < b.lo ? b.lo : a.lo;
    const QBeta& hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo < hi) out.push_back({lo, hi});
    if (a.hi < b.hi)
      ++i;
    else
      ++j;
  }
  return of(std::move(out));
}

IntervalSet IntervalSet::affine(const QBeta& mul, const QBeta& add) const {
  std::vector<Interval> out;
  for (const auto& p : iv_) out.push_back({p.lo * mul + add, p.hi * mul + add});
  return of(std::move(out));
}

bool IntervalSet::contains_right(const QBeta& x) const {
  for (const auto& p : iv_)
    if (p.lo <= x && x < p.hi) return true;
  return false;
}

bool IntervalSet::contains_left(const QBeta& x) const {
  for (const auto& p : iv_)
    if (p.lo < x && x <= p.hi) return true;
  return false;
}

QBeta IntervalSet::measure(const FieldPtr& f) const {
  QBeta s(f);
  for (const auto& p : iv_) s = s + (p.hi - p.lo);
  return s;
}

bool IntervalSet::operator==(const IntervalSet& o) const {
  if (iv_.size() != o.iv_.size()) return false;
  for (size_t i = 0; i < iv_.size(); ++i)
    if (!(iv_[i].lo == o.iv_[i].lo) || !(iv_[i].hi == o.iv_[i].hi)) return false;
  return true;
}

}  // namespace betatile
