#pragma once

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "betatile/error.hpp"
#include "betatile/io.hpp"

using namespace betatile;

namespace tst {

inline FieldPtr golden() {
  static FieldPtr f = PisotField::make({1, 1});
  return f;
}
inline FieldPtr tribonacci() {
  static FieldPtr f = PisotField::make({1, 1, 1});
  return f;
}
inline FieldPtr smallest() {
  static FieldPtr f = PisotField::make({0, 1, 1});
  return f;
}
inline FieldPtr cubic_a() {  // beta^3 = 2 beta^2 - beta + 1
  static FieldPtr f = PisotField::make({2, -1, 1});
  return f;
}
inline FieldPtr cubic_b() {  // beta^3 = beta^2 + 1
  static FieldPtr f = PisotField::make({1, 0, 1});
  return f;
}

inline QBeta Q(const FieldPtr& f, std::vector<std::string> c) {
  c.resize(f->degree(), "0");
  return QBeta::parse(f, c);
}
inline QBeta I(const FieldPtr& f, long v) { return QBeta::integer(f, v); }
inline QBeta B(const FieldPtr& f, int k) { return I(f, 1).pow_beta(k); }

inline RunConfig config(const std::string& name) {
  return load_config(std::string(BETATILE_SRC) + "/configs/" + name);
}

// digit index of an integer digit value
inline int di(const BetaTransform& t, long a) {
  for (size_t i = 0; i < t.digits().size(); ++i)
    if (t.digits()[i] == I(t.field(), a)) return int(i);
  FAIL("no digit " << a);
  return -1;
}
inline std::vector<int> ds(const BetaTransform& t, std::vector<long> v) {
  std::vector<int> out;
  for (long a : v) out.push_back(di(t, a));
  return out;
}
inline Word word(const BetaTransform& t, std::vector<long> pre, std::vector<long> per) {
  return Word{ds(t, pre), ds(t, per)};
}

// oracle: beta by bisection on the minimal polynomial in long double
inline long double beta_ld(const FieldPtr& f) {
  const auto& c = f->coeffs();
  auto p = [&](long double x) {
    long double v = 1;
    for (long ci : c) v = v * x - ci;
    return v;
  };
  long double lo = 1, hi = 1;
  for (long ci : c) hi += std::labs(ci);
  for (int i = 0; i < 200; ++i) {
    long double m = (lo + hi) / 2;
    (p(m) > 0 ? hi : lo) = m;
  }
  return (lo + hi) / 2;
}

// oracle: all roots by Durand-Kerner
inline std::vector<std::complex<long double>> roots_ld(const FieldPtr& f) {
  const auto& c = f->coeffs();
  int d = int(c.size());
  auto p = [&](std::complex<long double> x) {
    std::complex<long double> v = 1;
    for (long ci : c) v = v * x - (long double)ci;
    return v;
  };
  std::vector<std::complex<long double>> z(d);
  std::complex<long double> seed(0.4L, 0.9L);
  for (int i = 0; i < d; ++i) z[i] = std::pow(seed, i);
  for (int it = 0; it < 500; ++it)
    for (int i = 0; i < d; ++i) {
      std::complex<long double> den = 1;
      for (int j = 0; j < d; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= p(z[i]) / den;
    }
  return z;
}

inline std::complex<long double> eval_at(const QBeta& x, std::complex<long double> b) {
  std::complex<long double> v = 0, pw = 1;
  for (const auto& q : x.coords()) {
    v += pw * (long double)q.get_d();
    pw *= b;
  }
  return v;
}

inline long double value_ld(const QBeta& x) { return eval_at(x, beta_ld(x.field())).real(); }

// oracle: value of an eventually periodic word by truncated summation
inline long double word_value_ld(const BetaTransform& t, const Word& w, int terms = 400) {
  long double b = beta_ld(t.field()), s = 0, pw = 1;
  for (int k = 0; k < terms; ++k) {
    pw /= b;
    int d = k < int(w.pre.size()) ? w.pre[k] : w.per[(k - w.pre.size()) % w.per.size()];
    s += pw * value_ld(t.digits()[d]);
  }
  return s;
}

inline QBeta random_qbeta(std::mt19937_64& g, const FieldPtr& f, long range = 50, long den = 1) {
  std::uniform_int_distribution<long> n(-range, range), q(1, den);
  std::vector<mpq_class> c;
  for (int i = 0; i < f->degree(); ++i) {
    mpq_class v(n(g), q(g));
    v.canonicalize();
    c.push_back(v);
  }
  return QBeta(f, c);
}

// random point of the domain with small denominators, so that orbits stay short
inline QBeta random_point(std::mt19937_64& g, const BetaTransform& t, long max_den = 12) {
  const auto& pc = t.pieces();
  std::uniform_int_distribution<size_t> pick(0, pc.size() - 1);
  std::uniform_int_distribution<long> dd(1, max_den);
  for (;;) {
    const Piece& p = pc[pick(g)];
    long den = dd(g);
    mpq_class s(std::uniform_int_distribution<long>(0, den - 1)(g), den);
    s.canonicalize();
    QBeta x = p.lo + (p.hi - p.lo).scaled(s);
    if (t.contains(x)) return x;
  }
}

inline bool contains(const std::vector<QBeta>& v, const QBeta& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace tst
