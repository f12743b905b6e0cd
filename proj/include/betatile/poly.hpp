#pragma once

#include <gmpxx.h>

#include <vector>

namespace betatile {

// Dense polynomials, coefficient k is the coefficient of x^k.
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

void trim(ZPoly& p);
void trim(QPoly& p);
int degree(const ZPoly& p);
int degree(const QPoly& p);

QPoly to_q(const ZPoly& p);
QPoly derivative(const QPoly& p);
// quotient and remainder over Q; b must be nonzero
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly gcd(const QPoly& a, const QPoly& b);
// exact division test for integer polynomials with monic divisor
bool divides(const ZPoly& monic_divisor, const ZPoly& p);

mpq_class eval(const QPoly& p, const mpq_class& x);
int sign_at(const ZPoly& p, const mpq_class& x);

}  // namespace betatile
