#include <algorithm>
#include <numeric>

#include "betatile/betamap.hpp"
#include "betatile/error.hpp"

namespace betatile {

BetaTransform BetaTransform::build(FieldPtr f, std::vector<QBeta> digits, std::vector<std::vector<Interval>> parts,
                                   Side side) {
  if (digits.empty()) fail(Errc::EmptyPart, "no digits");
  if (digits.size() != parts.size()) fail(Errc::BadConfig, "one part list per digit required");
  for (size_t i = 0; i < digits.size(); ++i)
    for (size_t j = i + 1; j < digits.size(); ++j)
      if (digits[i] == digits[j]) fail(Errc::BadConfig, "repeated digit");

  BetaTransform t;
  t.f_ = f;
  t.side_ = side;
  t.digits_ = std::move(digits);
  for (size_t a = 0; a < parts.size(); ++a) {
    if (parts[a].empty()) fail(Errc::EmptyPart, "digit " + t.digits_[a].str() + " has no interval");
    for (const auto& iv : parts[a])
      if (!(iv.lo < iv.hi)) fail(Errc::EmptyPart, "empty interval for digit " + t.digits_[a].str());
    t.parts_.push_back(IntervalSet::of(parts[a]));
    for (const auto& iv : t.parts_.back().pieces()) t.pieces_.push_back({iv.lo, iv.hi, int(a)});
  }
  std::sort(t.pieces_.begin(), t.pieces_.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  for (size_t i = 0; i + 1 < t.pieces_.size(); ++i)
    if (t.pieces_[i + 1].lo < t.pieces_[i].hi) fail(Errc::Overlap, "pieces overlap near " + t.pieces_[i + 1].lo.str());

  std::vector<Interval> all;
  for (const auto& p : t.pieces_) all.push_back({p.lo, p.hi});
  t.domain_ = IntervalSet::of(all);

  IntervalSet image;
  QBeta beta = QBeta::beta(f);
  for (size_t a = 0; a < t.parts_.size(); ++a) image = image.unite(t.parts_[a].affine(beta, -t.digits_[a]));
  if (!(image == t.domain_)) fail(Errc::NotSurjective, "union of beta X_a - a differs from X");

  t.rank_.resize(t.digits_.size());
  std::vector<int> order(t.digits_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return t.digits_[a] < t.digits_[b]; });
  for (size_t r = 0; r < order.size(); ++r) t.rank_[order[r]] = int(r);
  return t;
}

int BetaTransform::piece_of(const QBeta& x) const {
  // last piece whose left end is <= x (right side) or < x (left side)
  int lo = 0, hi = int(pieces_.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    bool before = side_ == Side::Right ? pieces_[mid].lo <= x : pieces_[mid].lo < x;
    if (before)
      lo = mid + 1;
    else
      hi = mid;
  }
  int k = lo - 1;
  if (k < 0) return -1;
  bool in = side_ == Side::Right ? x < pieces_[k].hi : x <= pieces_[k].hi;
  return in ? k : -1;
}

int BetaTransform::digit_of(const QBeta& x) const {
  int k = piece_of(x);
  return k < 0 ? -1 : pieces_[k].digit;
}

bool BetaTransform::digits_integral() const {
  for (const auto& a : digits_)
    if (!a.is_integral()) return false;
  return true;
}

bool BetaTransform::ordered() const {
  if (pieces_.size() != digits_.size()) return false;
  for (size_t i = 0; i < pieces_.size(); ++i)
    if (rank_[pieces_[i].digit] != int(i)) return false;
  return true;
}

BetaTransform BetaTransform::twin() const {
  BetaTransform t = *this;
  t.side_ = side_ == Side::Right ? Side::Left : Side::Right;
  return t;
}

StepResult step(const BetaTransform& t, const QBeta& x) {
  int k = t.piece_of(x);
  if (k < 0) fail(Errc::OutOfDomain, "point " + x.str() + " is outside X");
  int a = t.pieces()[k].digit;
  return {a, x.mul_beta() - t.digits()[a]};
}

}  // namespace betatile
