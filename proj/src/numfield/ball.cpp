#include "betatile/ball.hpp"

#include <cmath>
#include <limits>

namespace betatile {

namespace {

constexpr double kU = std::numeric_limits<double>::epsilon();

// round q to a multiple of 2^-bits, report the absolute error bound
mpq_class round_dyadic(const mpq_class& q, unsigned bits, mpq_class& err) {
  mpz_class scaled;
  mpz_class num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  mpq_class out(scaled);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  err = abs(q - out);
  return out;
}

double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

}  // namespace

mpq_class RBall::abs_center_up() const { return abs(re) + abs(im); }

bool RBall::contains_zero() const { return re * re + im * im <= rad * rad; }

RBall RBall::truncated(unsigned bits) const {
  mpq_class e1, e2, e3;
  RBall out;
  out.re = round_dyadic(re, bits, e1);
  out.im = round_dyadic(im, bits, e2);
  mpq_class r = rad + e1 + e2;
  mpq_class rr = round_dyadic(r, bits, e3);
  out.rad = rr + e3 + e3;
  out.rad.canonicalize();
  return out;
}

RBall operator+(const RBall& a, const RBall& b) { return RBall(a.re + b.re, a.im + b.im, a.rad + b.rad); }

RBall operator-(const RBall& a, const RBall& b) { return RBall(a.re - b.re, a.im - b.im, a.rad + b.rad); }

RBall operator*(const RBall& a, const RBall& b) {
  RBall out;
  out.re = a.re * b.re - a.im * b.im;
  out.im = a.re * b.im + a.im * b.re;
  out.rad = a.abs_center_up() * b.rad + b.abs_center_up() * a.rad + a.rad * b.rad;
  return out;
}

RBall scale(const RBall& a, const mpq_class& q) { return RBall(a.re * q, a.im * q, a.rad * abs(q)); }

RBall conj(const RBall& a) { return RBall(a.re, -a.im, a.rad); }

bool inside_unit(const RBall& a) {
  if (a.rad >= 1) return false;
  mpq_class m = 1 - a.rad;
  return a.re * a.re + a.im * a.im < m * m;
}

bool outside_unit(const RBall& a) {
  mpq_class m = 1 + a.rad;
  return a.re * a.re + a.im * a.im > m * m;
}

bool disjoint(const RBall& a, const RBall& b) {
  mpq_class dr = a.re - b.re, di = a.im - b.im, s = a.rad + b.rad;
  return dr * dr + di * di > s * s;
}

CBall to_cball(const RBall& b) {
  CBall out;
  double re = b.re.get_d(), im = b.im.get_d();
  out.c = {re, im};
  mpq_class er = abs(b.re - mpq_class(re)), ei = abs(b.im - mpq_class(im));
  double e = er.get_d() + ei.get_d();
  out.r = up(up(b.rad.get_d()) + up(e) + 4 * kU * std::numeric_limits<double>::min());
  out.r = up(out.r * (1 + 2 * kU));
  return out;
}

CBall cball_of(const mpq_class& q) {
  CBall out;
  double x = q.get_d();
  out.c = {x, 0.0};
  out.r = up(std::abs(x) * kU + std::numeric_limits<double>::denorm_min());
  return out;
}

CBall operator+(const CBall& a, const CBall& b) {
  CBall out;
  out.c = a.c + b.c;
  out.r = up((a.r + b.r + kU * std::abs(out.c)) * (1 + 2 * kU));
  return out;
}

CBall operator*(const CBall& a, const CBall& b) {
  CBall out;
  out.c = a.c * b.c;
  double ma = std::abs(a.c), mb = std::abs(b.c);
  out.r = up((ma * b.r + mb * a.r + a.r * b.r + 4 * kU * ma * mb) * (1 + 4 * kU));
  return out;
}

double abs_up(const CBall& a) { return up((std::abs(a.c) + a.r) * (1 + 2 * kU)); }

}  // namespace betatile
