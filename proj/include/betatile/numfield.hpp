#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "betatile/ball.hpp"
#include "betatile/poly.hpp"

namespace betatile {

class PisotField;
using FieldPtr = std::shared_ptr<const PisotField>;

// One invariant block of M restricted to the contracting hyperplane:
// a real conjugate gives a 1-dim block, a complex pair a 2-dim block.
struct HBlock {
  int conj = 0;  // index into PisotField::conjugates()
  bool complex = false;
  int offset = 0;  // first H coordinate
};

// Point of the contracting hyperplane in block coordinates with an error radius.
struct HPoint {
  std::vector<double> x;
  double err = 0.0;
};

using LatticeVec = std::vector<mpz_class>;

class QBeta {
 public:
  QBeta() = default;
  explicit QBeta(FieldPtr f);
  QBeta(FieldPtr f, std::vector<mpq_class> coords);

  static QBeta integer(FieldPtr f, long v);
  static QBeta rational(FieldPtr f, const mpq_class& q);
  static QBeta beta(FieldPtr f);
  // "p/q" strings, one per coordinate
  static QBeta parse(FieldPtr f, const std::vector<std::string>& coords);

  const FieldPtr& field() const { return f_; }
  const std::vector<mpq_class>& coords() const { return q_; }
  int dim() const { return int(q_.size()); }

  bool is_zero() const;
  bool is_integral() const;
  bool is_rational() const;

  QBeta operator+(const QBeta& o) const;
  QBeta operator-(const QBeta& o) const;
  QBeta operator-() const;
  QBeta operator*(const QBeta& o) const;
  QBeta operator/(const QBeta& o) const;
  QBeta scaled(const mpq_class& s) const;
  QBeta mul_beta() const;
  QBeta div_beta() const;
  QBeta pow_beta(int k) const;
  QBeta inverse() const;

  bool operator==(const QBeta& o) const;
  std::strong_ordering operator<=>(const QBeta& o) const;
  int sign() const;

  double approx() const;
  std::vector<std::string> to_strings() const;
  std::string str() const;
  std::size_t hash() const;

 private:
  void check_same(const QBeta& o) const;
  FieldPtr f_;
  std::vector<mpq_class> q_;
};

struct QBetaHash {
  std::size_t operator()(const QBeta& x) const { return x.hash(); }
};

std::string rational_str(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

class PisotField {
 public:
  // coefficients (c1..cd) of beta^d = c1 beta^(d-1) + ... + cd
  static FieldPtr make(const std::vector<long>& coeffs);

  int degree() const { return d_; }
  const std::vector<long>& coeffs() const { return c_; }
  const ZPoly& minpoly() const { return minpoly_; }
  const std::vector<std::vector<long>>& companion() const { return m_; }
  double beta_approx() const { return beta_d_; }
  // certified rational enclosure of beta, width <= 2^-bits
  void beta_enclosure(unsigned bits, mpq_class& lo, mpq_class& hi) const;
  double rho() const { return rho_; }

  const std::vector<RBall>& conjugates_exact() const { return conj_exact_; }
  const std::vector<CBall>& conjugates() const { return conj_; }
  const std::vector<std::vector<CBall>>& eigenvectors() const { return vec_; }
  const std::vector<HBlock>& blocks() const { return blocks_; }
  int hdim() const { return d_ - 1; }
  // real basis of H in R^d, one vector per H coordinate
  const std::vector<std::vector<double>>& hbasis() const { return hbasis_; }
  std::vector<double> v1() const;
  // |det(v1, hbasis)|
  double frame_det() const { return frame_det_; }

  int sign_of(const std::vector<mpq_class>& q) const;
  // q * beta reduced into the power basis
  void mul_beta_inplace(std::vector<mpq_class>& q) const;
  void div_beta_inplace(std::vector<mpq_class>& q) const;
  std::vector<mpq_class> multiply(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const;
  std::vector<mpq_class> invert(const std::vector<mpq_class>& a) const;

  CBall gamma(const QBeta& x, int j) const;
  RBall gamma_exact(const QBeta& x, int j, unsigned bits) const;
  HPoint phi(const QBeta& x) const;
  // block-coordinate action of M on H, applied to p in place
  void act(std::vector<double>& p) const;
  // real d-vector of an H point
  std::vector<double> to_ambient(const std::vector<double>& h) const;
  std::vector<double> from_ambient_h(const std::vector<double>& y, double& t) const;

  LatticeVec psi(const QBeta& x) const;
  std::vector<mpq_class> psi_rational(const QBeta& x) const;
  QBeta pi1(const std::vector<mpq_class>& v) const;

  bool same_as(const PisotField& o) const { return c_ == o.c_; }

 private:
  PisotField() = default;
  void init(const std::vector<long>& coeffs);

  int d_ = 0;
  std::vector<long> c_;
  ZPoly minpoly_;
  std::vector<std::vector<long>> m_;
  std::vector<mpq_class> red_;  // beta^d in the power basis
  mpq_class beta_lo_, beta_hi_;  // width <= 2^-kStoredBits
  double beta_d_ = 0.0;
  std::vector<double> beta_pow_d_;
  std::vector<mpq_class> pow_lo_, pow_hi_;  // 64-bit enclosure powers
  double rho_ = 0.0;
  std::vector<RBall> conj_exact_;
  std::vector<CBall> conj_;
  std::vector<std::vector<CBall>> conj_pow_;  // [j][k] = beta_j^k
  std::vector<std::vector<CBall>> vec_;
  std::vector<HBlock> blocks_;
  std::vector<std::vector<double>> hbasis_;
  std::vector<std::vector<double>> frame_inv_;
  double frame_det_ = 0.0;
  std::vector<LatticeVec> kcols_;  // M^k e1
  std::weak_ptr<const PisotField> self_;
  friend class QBeta;

 public:
  FieldPtr self() const { return self_.lock(); }
};

}  // namespace betatile
