#include <algorithm>
#include <cmath>

#include "betatile/betamap.hpp"
#include "betatile/error.hpp"

namespace betatile {

long floor_of(const QBeta& x) {
  long n = long(std::floor(x.approx()));
  const FieldPtr& f = x.field();
  while (QBeta::integer(f, n) > x) --n;
  while (QBeta::integer(f, n + 1) <= x) ++n;
  return n;
}

long ceil_of(const QBeta& x) {
  long n = floor_of(x);
  return QBeta::integer(x.field(), n) == x ? n : n + 1;
}

namespace {

QBeta over_beta(const QBeta& x) { return x.div_beta(); }

}  // namespace

BetaTransform preset_greedy(const FieldPtr& f) {
  long n = ceil_of(QBeta::beta(f));
  std::vector<QBeta> digits;
  std::vector<std::vector<Interval>> parts;
  for (long a = 0; a < n; ++a) {
    digits.push_back(QBeta::integer(f, a));
    QBeta lo = over_beta(QBeta::integer(f, a));
    QBeta hi = a + 1 < n ? over_beta(QBeta::integer(f, a + 1)) : QBeta::integer(f, 1);
    parts.push_back({{lo, hi}});
  }
  return BetaTransform::build(f, digits, parts, Side::Right);
}

BetaTransform preset_lazy(const FieldPtr& f) {
  long n = ceil_of(QBeta::beta(f));
  QBeta one = QBeta::integer(f, 1);
  QBeta L = QBeta::integer(f, n - 1) / (QBeta::beta(f) - one);
  std::vector<QBeta> digits;
  std::vector<std::vector<Interval>> parts;
  for (long a = 0; a < n; ++a) {
    digits.push_back(QBeta::integer(f, a));
    QBeta lo = a == 0 ? QBeta(f) : over_beta(L + QBeta::integer(f, a - 1));
    QBeta hi = a + 1 < n ? over_beta(L + QBeta::integer(f, a)) : L;
    parts.push_back({{lo, hi}});
  }
  return BetaTransform::build(f, digits, parts, Side::Left);
}

BetaTransform preset_pedicini(const FieldPtr& f, const std::vector<QBeta>& digits_in) {
  std::vector<QBeta> digits = digits_in;
  std::sort(digits.begin(), digits.end());
  if (digits.size() < 2 || !digits.front().is_zero()) fail(Errc::BadConfig, "digit set must start with 0");
  QBeta one = QBeta::integer(f, 1);
  QBeta top = digits.back() / (QBeta::beta(f) - one);
  for (size_t i = 0; i + 1 < digits.size(); ++i)
    if (digits[i + 1] - digits[i] > top) fail(Errc::PediciniGapViolated, "digit gap larger than a_m/(beta-1)");
  std::vector<std::vector<Interval>> parts;
  for (size_t i = 0; i < digits.size(); ++i) {
    QBeta lo = over_beta(digits[i]);
    QBeta hi = i + 1 < digits.size() ? over_beta(digits[i + 1]) : top;
    parts.push_back({{lo, hi}});
  }
  return BetaTransform::build(f, digits, parts, Side::Right);
}

BetaTransform preset_linear_mod1(const FieldPtr& f, const QBeta& alpha) {
  if (alpha.sign() < 0 || alpha >= QBeta::integer(f, 1)) fail(Errc::BadAlpha, "alpha must lie in [0, 1)");
  long n = ceil_of(QBeta::beta(f) + alpha);
  std::vector<QBeta> digits;
  std::vector<std::vector<Interval>> parts;
  for (long i = 0; i < n; ++i) {
    QBeta a = QBeta::integer(f, i) - alpha;
    digits.push_back(a);
    QBeta lo = i == 0 ? QBeta(f) : over_beta(a);
    QBeta hi = i + 1 < n ? over_beta(QBeta::integer(f, i + 1) - alpha) : QBeta::integer(f, 1);
    parts.push_back({{lo, hi}});
  }
  try {
    return BetaTransform::build(f, digits, parts, Side::Right);
  } catch (const Error& e) {
    fail(Errc::BadAlpha, std::string("alpha gives no valid transformation: ") + e.what());
  }
}

BetaTransform preset_minimal_weight(const FieldPtr& f, const QBeta& alpha) {
  if (alpha.sign() <= 0) fail(Errc::BadAlpha, "alpha must be positive");
  QBeta ba = alpha.mul_beta();
  std::vector<QBeta> digits{QBeta::integer(f, -1), QBeta::integer(f, 0), QBeta::integer(f, 1)};
  std::vector<std::vector<Interval>> parts{{{-ba, -alpha}}, {{-alpha, alpha}}, {{alpha, ba}}};
  try {
    return BetaTransform::build(f, digits, parts, Side::Right);
  } catch (const Error& e) {
    fail(Errc::BadAlpha, std::string("alpha gives no valid transformation: ") + e.what());
  }
}

BetaTransform preset_symmetric(const FieldPtr& f) {
  QBeta beta = QBeta::beta(f);
  QBeta one = QBeta::integer(f, 1);
  mpq_class half(1, 2);
  long lo_d = floor_of((one - beta).scaled(half));
  long hi_d = ceil_of((beta - one).scaled(half));
  QBeta h = QBeta::rational(f, half);
  QBeta hb = h.div_beta();
  std::vector<QBeta> digits;
  std::vector<std::vector<Interval>> parts;
  for (long i = lo_d; i <= hi_d; ++i) {
    QBeta c = over_beta(QBeta::integer(f, i));
    QBeta lo = i == lo_d ? -h : c - hb;
    QBeta hi = i == hi_d ? h : c + hb;
    digits.push_back(QBeta::integer(f, i));
    parts.push_back({{lo, hi}});
  }
  return BetaTransform::build(f, digits, parts, Side::Right);
}

}  // namespace betatile
