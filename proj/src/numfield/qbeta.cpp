#include <functional>

#include "betatile/error.hpp"
#include "betatile/numfield.hpp"

namespace betatile {

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  std::string t;
  for (char c : s)
    if (c != ' ') t.push_back(c);
  if (t.empty() || q.set_str(t, 10) != 0) fail(Errc::BadConfig, "bad rational '" + s + "'");
  if (q.get_den() == 0) fail(Errc::BadConfig, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

QBeta::QBeta(FieldPtr f) : f_(std::move(f)), q_(f_->degree(), 0) {}

QBeta::QBeta(FieldPtr f, std::vector<mpq_class> coords) : f_(std::move(f)), q_(std::move(coords)) {
  if (int(q_.size()) != f_->degree()) fail(Errc::FieldMismatch, "coordinate count differs from the field degree");
}

QBeta QBeta::integer(FieldPtr f, long v) {
  QBeta x(std::move(f));
  x.q_[0] = v;
  return x;
}

QBeta QBeta::rational(FieldPtr f, const mpq_class& q) {
  QBeta x(std::move(f));
  x.q_[0] = q;
  return x;
}

QBeta QBeta::beta(FieldPtr f) {
  QBeta x(std::move(f));
  x.q_[0] = 0;
  if (x.q_.size() > 1)
    x.q_[1] = 1;
  else
    x.q_[0] = x.f_->coeffs()[0];
  return x;
}

QBeta QBeta::parse(FieldPtr f, const std::vector<std::string>& coords) {
  if (int(coords.size()) != f->degree()) fail(Errc::BadConfig, "value needs one rational per field coordinate");
  std::vector<mpq_class> q;
  for (const auto& s : coords) q.push_back(parse_rational(s));
  return QBeta(std::move(f), std::move(q));
}

void QBeta::check_same(const QBeta& o) const {
  if (f_ == o.f_) return;
  if (!f_ || !o.f_ || !f_->same_as(*o.f_)) fail(Errc::FieldMismatch, "values from different fields");
}

bool QBeta::is_zero() const {
  for (const auto& c : q_)
    if (c != 0) return false;
  return true;
}

bool QBeta::is_integral() const {
  for (const auto& c : q_)
    if (c.get_den() != 1) return false;
  return true;
}

bool QBeta::is_rational() const {
  for (size_t i = 1; i < q_.size(); ++i)
    if (q_[i] != 0) return false;
  return true;
}

QBeta QBeta::operator+(const QBeta& o) const {
  check_same(o);
  QBeta r(f_, q_);
  for (size_t i = 0; i < q_.size(); ++i) r.q_[i] += o.q_[i];
  return r;
}

QBeta QBeta::operator-(const QBeta& o) const {
  check_same(o);
  QBeta r(f_, q_);
  for (size_t i = 0; i < q_.size(); ++i) r.q_[i] -= o.q_[i];
  return r;
}

QBeta QBeta::operator-() const {
  QBeta r(f_, q_);
  for (auto& c : r.q_) c = -c;
  return r;
}

QBeta QBeta::operator*(const QBeta& o) const {
  check_same(o);
  return QBeta(f_, f_->multiply(q_, o.q_));
}

QBeta QBeta::operator/(const QBeta& o) const {
  check_same(o);
  return *this * o.inverse();
}

QBeta QBeta::scaled(const mpq_class& s) const {
  QBeta r(f_, q_);
  for (auto& c : r.q_) c *= s;
  return r;
}

QBeta QBeta::mul_beta() const {
  QBeta r(f_, q_);
  f_->mul_beta_inplace(r.q_);
  return r;
}

QBeta QBeta::div_beta() const {
  QBeta r(f_, q_);
  f_->div_beta_inplace(r.q_);
  return r;
}

QBeta QBeta::pow_beta(int k) const {
  QBeta r(f_, q_);
  for (; k > 0; --k) f_->mul_beta_inplace(r.q_);
  for (; k < 0; ++k) f_->div_beta_inplace(r.q_);
  return r;
}

QBeta QBeta::inverse() const {
  if (is_zero()) fail(Errc::Internal, "division by zero in Q(beta)");
  return QBeta(f_, f_->invert(q_));
}

bool QBeta::operator==(const QBeta& o) const {
  check_same(o);
  return q_ == o.q_;
}

int QBeta::sign() const { return f_->sign_of(q_); }

std::strong_ordering QBeta::operator<=>(const QBeta& o) const {
  check_same(o);
  if (q_ == o.q_) return std::strong_ordering::equal;
  std::vector<mpq_class> diff(q_.size());
  for (size_t i = 0; i < q_.size(); ++i) diff[i] = q_[i] - o.q_[i];
  int s = f_->sign_of(diff);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QBeta::approx() const {
  double s = 0, pw = 1, b = f_->beta_approx();
  for (const auto& c : q_) {
    s += c.get_d() * pw;
    pw *= b;
  }
  return s;
}

std::vector<std::string> QBeta::to_strings() const {
  std::vector<std::string> out;
  for (const auto& c : q_) out.push_back(rational_str(c));
  return out;
}

std::string QBeta::str() const {
  std::string s = "[";
  for (size_t i = 0; i < q_.size(); ++i) {
    if (i) s += ",";
    s += rational_str(q_[i]);
  }
  return s + "]";
}

std::size_t QBeta::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](const mpz_class& z) {
    std::size_t n = mpz_size(z.get_mpz_t());
    h ^= std::hash<long>()(mpz_sgn(z.get_mpz_t())) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    for (std::size_t i = 0; i < n; ++i)
      h ^= std::hash<mp_limb_t>()(mpz_getlimbn(z.get_mpz_t(), i)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const auto& c : q_) {
    mix(c.get_num());
    mix(c.get_den());
  }
  return h;
}

}  // namespace betatile
