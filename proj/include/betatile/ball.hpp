#pragma once

#include <gmpxx.h>

#include <complex>

namespace betatile {

// Complex ball with exact rational center and radius.
struct RBall {
  mpq_class re, im, rad;

  RBall() : re(0), im(0), rad(0) {}
  RBall(mpq_class r, mpq_class i, mpq_class e) : re(std::move(r)), im(std::move(i)), rad(std::move(e)) {}
  static RBall exact(const mpq_class& x) { return RBall(x, 0, 0); }

  // upper bound for |center|
  mpq_class abs_center_up() const;
  bool contains_zero() const;
  // outward rounding of the center and radius to dyadic rationals with the given bits
  RBall truncated(unsigned bits) const;
};

RBall operator+(const RBall& a, const RBall& b);
RBall operator-(const RBall& a, const RBall& b);
RBall operator*(const RBall& a, const RBall& b);
RBall scale(const RBall& a, const mpq_class& q);
RBall conj(const RBall& a);
// |z| < 1 certainly, |z| > 1 certainly
bool inside_unit(const RBall& a);
bool outside_unit(const RBall& a);
bool disjoint(const RBall& a, const RBall& b);

// Complex ball with double center; radius already covers rounding.
struct CBall {
  std::complex<double> c{0.0, 0.0};
  double r = 0.0;
};

CBall to_cball(const RBall& b);
CBall cball_of(const mpq_class& q);
CBall operator+(const CBall& a, const CBall& b);
CBall operator*(const CBall& a, const CBall& b);
double abs_up(const CBall& a);

}  // namespace betatile
