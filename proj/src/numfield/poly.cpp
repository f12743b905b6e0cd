#include "betatile/poly.hpp"

#include "betatile/error.hpp"

namespace betatile {

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const ZPoly& p) {
  for (int i = int(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

int degree(const QPoly& p) {
  for (int i = int(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

QPoly to_q(const ZPoly& p) {
  QPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = mpq_class(p[i]);
  return r;
}

QPoly derivative(const QPoly& p) {
  QPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * mpq_class(long(i)));
  trim(r);
  return r;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  int db = degree(b);
  if (db < 0) fail(Errc::Internal, "polynomial division by zero");
  r = a;
  trim(r);
  q.assign(std::max<int>(0, degree(r) - db + 1), mpq_class(0));
  while (degree(r) >= db) {
    int dr = degree(r);
    mpq_class c = r[dr] / b[db];
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    trim(r);
  }
  trim(q);
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b, q, r;
  trim(x);
  trim(y);
  while (degree(y) >= 0) {
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  if (degree(x) >= 0) {
    mpq_class lc = x[degree(x)];
    for (auto& c : x) c /= lc;
  }
  return x;
}

bool divides(const ZPoly& m, const ZPoly& p) {
  int dm = degree(m);
  ZPoly r = p;
  trim(r);
  while (degree(r) >= dm) {
    int dr = degree(r);
    mpz_class c = r[dr];
    for (int i = 0; i <= dm; ++i) r[dr - dm + i] -= c * m[i];
    trim(r);
  }
  return degree(r) < 0;
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (int i = int(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
  return acc;
}

int sign_at(const ZPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (int i = int(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
  return sgn(acc);
}

}  // namespace betatile
