#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "betatile/error.hpp"
#include "betatile/numfield.hpp"

namespace betatile {

namespace {

constexpr unsigned kRootBits = 320;

using cld = std::complex<long double>;

cld eval_c(const ZPoly& p, cld z) {
  cld acc = 0;
  for (int i = int(p.size()) - 1; i >= 0; --i) acc = acc * z + cld((long double)p[i].get_d());
  return acc;
}

cld eval_dc(const ZPoly& p, cld z) {
  cld acc = 0;
  for (int i = int(p.size()) - 1; i >= 1; --i) acc = acc * z + cld((long double)(p[i].get_d() * i));
  return acc;
}

// p(z) and p'(z) at an exact complex rational point
void eval_exact(const ZPoly& p, const mpq_class& zr, const mpq_class& zi, mpq_class& pr, mpq_class& pi,
                mpq_class& dr, mpq_class& di) {
  pr = 0, pi = 0, dr = 0, di = 0;
  for (int i = int(p.size()) - 1; i >= 0; --i) {
    // derivative first, it uses the old value
    mpq_class ndr = dr * zr - di * zi + pr;
    mpq_class ndi = dr * zi + di * zr + pi;
    dr = ndr, di = ndi;
    mpq_class npr = pr * zr - pi * zi + mpq_class(p[i]);
    mpq_class npi = pr * zi + pi * zr;
    pr = npr, pi = npi;
  }
}

mpq_class max_abs(const mpq_class& a, const mpq_class& b) {
  mpq_class x = abs(a), y = abs(b);
  return x > y ? x : y;
}

// Newton refinement in exact rationals; returns a certified ball around one root.
RBall certify_root(const ZPoly& p, mpq_class zr, mpq_class zi, bool real, unsigned bits) {
  int d = degree(p);
  mpq_class pr, pi, dr, di;
  mpq_class target(1);
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), bits);
  for (int it = 0; it < 200; ++it) {
    eval_exact(p, zr, zi, pr, pi, dr, di);
    mpq_class den = max_abs(dr, di);
    if (den == 0) fail(Errc::Internal, "vanishing derivative at a root approximation");
    mpq_class rad = mpq_class(d) * (abs(pr) + abs(pi)) / den;
    if (rad <= target) {
      RBall b(zr, zi, rad);
      return b;
    }
    mpq_class n2 = dr * dr + di * di;
    mpq_class qr = (pr * dr + pi * di) / n2;
    mpq_class qi = (pi * dr - pr * di) / n2;
    RBall z(zr - qr, real ? mpq_class(0) : zi - qi, 0);
    z = z.truncated(bits + 16);
    zr = z.re;
    zi = real ? mpq_class(0) : z.im;
  }
  fail(Errc::Internal, "root refinement did not converge");
}

mpq_class dyadic_floor(const mpq_class& q, unsigned bits) {
  mpz_class n = q.get_num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
  mpq_class out(f);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

mpq_class dyadic_ceil(const mpq_class& q, unsigned bits) {
  mpz_class n = q.get_num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  mpz_class f;
  mpz_cdiv_q(f.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
  mpq_class out(f);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

RBall inverse_ball(const RBall& b) {
  mpq_class n2 = b.re * b.re + b.im * b.im;
  mpq_class low = max_abs(b.re, b.im);  // |c| >= low >= |c|/sqrt 2
  if (low <= b.rad) fail(Errc::Internal, "ball inverse of a ball around zero");
  RBall out(b.re / n2, -b.im / n2, b.rad / (low * (low - b.rad)));
  return out;
}

// search for a monic integer factor of degree < d through products of root subsets
bool has_integer_factor(const ZPoly& p, const std::vector<cld>& roots) {
  int d = int(roots.size());
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    int k = __builtin_popcount(mask);
    if (2 * k > d) continue;
    std::vector<cld> f{cld(1)};
    for (int i = 0; i < d; ++i) {
      if (!(mask & (1u << i))) continue;
      std::vector<cld> g(f.size() + 1, cld(0));
      for (size_t j = 0; j < f.size(); ++j) {
        g[j + 1] += f[j];
        g[j] -= f[j] * roots[i];
      }
      f = g;
    }
    ZPoly cand(f.size());
    bool ok = true;
    for (size_t j = 0; j < f.size(); ++j) {
      long double re = std::round(f[j].real());
      if (std::abs(f[j].imag()) > 1e-6L || std::abs(f[j].real() - re) > 1e-6L) {
        ok = false;
        break;
      }
      cand[j] = mpz_class(std::to_string((long long)re));
    }
    if (ok && divides(cand, p)) return true;
  }
  return false;
}

}  // namespace

FieldPtr PisotField::make(const std::vector<long>& coeffs) {
  std::shared_ptr<PisotField> f(new PisotField());
  f->init(coeffs);
  f->self_ = f;
  return f;
}

void PisotField::init(const std::vector<long>& coeffs) {
  d_ = int(coeffs.size());
  c_ = coeffs;
  if (d_ < 1) fail(Errc::BadConfig, "empty coefficient list");
  if (std::labs(coeffs.back()) != 1) fail(Errc::NotUnit, "constant coefficient must be +-1");
  if (d_ < 2) fail(Errc::NotPisot, "degree one fields have no Pisot unit beta > 1");

  minpoly_.assign(d_ + 1, 0);
  minpoly_[d_] = 1;
  for (int k = 1; k <= d_; ++k) minpoly_[d_ - k] = -coeffs[k - 1];

  QPoly pq = to_q(minpoly_);
  if (betatile::degree(gcd(pq, derivative(pq))) > 0) fail(Errc::NotIrreducible, "minimal polynomial has a repeated factor");

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d_, d_);
  for (int j = 0; j < d_; ++j) comp(0, j) = double(coeffs[j]);
  for (int i = 1; i < d_; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<cld> roots;
  for (int i = 0; i < d_; ++i) {
    cld z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 8; ++it) {
      cld dz = eval_dc(minpoly_, z);
      if (std::abs(dz) == 0) break;
      z -= eval_c(minpoly_, z) / dz;
    }
    roots.push_back(z);
  }
  if (has_integer_factor(minpoly_, roots)) fail(Errc::NotIrreducible, "polynomial factors over Z");

  std::vector<RBall> real_balls, cplx_balls;
  for (const cld& z : roots) {
    long double scale = std::max<long double>(1, std::abs(z));
    if (std::abs(z.imag()) < 1e-9L * scale) {
      real_balls.push_back(certify_root(minpoly_, mpq_class(double(z.real())), 0, true, kRootBits));
    } else if (z.imag() > 0) {
      cplx_balls.push_back(
          certify_root(minpoly_, mpq_class(double(z.real())), mpq_class(double(z.imag())), false, kRootBits));
    }
  }
  if (real_balls.size() + 2 * cplx_balls.size() != size_t(d_))
    fail(Errc::Internal, "root classification mismatch");
  for (const auto& b : cplx_balls)
    if (abs(b.im) <= b.rad) fail(Errc::Internal, "complex root not separated from the real axis");

  std::vector<RBall> all = real_balls;
  for (const auto& b : cplx_balls) {
    all.push_back(b);
    all.push_back(conj(b));
  }
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      if (!disjoint(all[i], all[j])) fail(Errc::Internal, "root balls overlap");

  int big = -1;
  for (size_t i = 0; i < all.size(); ++i) {
    if (outside_unit(all[i])) {
      if (big >= 0) fail(Errc::NotPisot, "more than one conjugate outside the unit disk");
      big = int(i);
    } else if (!inside_unit(all[i])) {
      fail(Errc::NotPisot, "a conjugate lies on the unit circle");
    }
  }
  if (big < 0) fail(Errc::NotPisot, "no conjugate outside the unit disk");
  if (size_t(big) >= real_balls.size() || all[big].re - all[big].rad <= 1)
    fail(Errc::NotPisot, "dominant root is not a real number > 1");

  RBall b1 = all[big];
  std::vector<RBall> rest_real, rest_cplx;
  for (size_t i = 0; i < real_balls.size(); ++i)
    if (int(i) != big) rest_real.push_back(real_balls[i]);
  std::sort(rest_real.begin(), rest_real.end(), [](const RBall& a, const RBall& b) { return a.re > b.re; });
  rest_cplx = cplx_balls;
  std::sort(rest_cplx.begin(), rest_cplx.end(), [](const RBall& a, const RBall& b) {
    if (a.re != b.re) return a.re > b.re;
    return a.im > b.im;
  });
  conj_exact_.clear();
  conj_exact_.push_back(b1);
  for (auto& b : rest_real) conj_exact_.push_back(b);
  for (auto& b : rest_cplx) {
    conj_exact_.push_back(b);
    conj_exact_.push_back(conj(b));
  }

  beta_lo_ = b1.re - b1.rad;
  beta_hi_ = b1.re + b1.rad;
  if (sign_at(minpoly_, beta_lo_) * sign_at(minpoly_, beta_hi_) >= 0)
    fail(Errc::Internal, "beta enclosure does not bracket a sign change");
  beta_d_ = b1.re.get_d();
  beta_pow_d_.assign(d_, 1.0);
  {
    mpq_class pw = 1;
    for (int k = 0; k < d_; ++k) {
      beta_pow_d_[k] = pw.get_d();
      pw *= b1.re;
    }
  }

  red_.assign(d_, 0);
  for (int i = 0; i < d_; ++i) red_[i] = coeffs[d_ - 1 - i];
  m_.assign(d_, std::vector<long>(d_, 0));
  for (int j = 0; j < d_; ++j) m_[0][j] = coeffs[j];
  for (int i = 1; i < d_; ++i) m_[i][i - 1] = 1;

  conj_.clear();
  conj_pow_.assign(d_, {});
  vec_.assign(d_, {});
  QPoly dp = derivative(pq);
  for (int j = 0; j < d_; ++j) {
    const RBall& z = conj_exact_[j];
    conj_.push_back(to_cball(z));
    std::vector<RBall> pw(d_);
    pw[0] = RBall::exact(1);
    for (int k = 1; k < d_; ++k) pw[k] = (pw[k - 1] * z).truncated(kRootBits);
    for (int k = 0; k < d_; ++k) conj_pow_[j].push_back(to_cball(pw[k]));
    RBall der = RBall::exact(0);
    for (int k = betatile::degree(dp); k >= 0; --k) der = (der * z).truncated(kRootBits) + RBall::exact(dp[k]);
    RBall nu = inverse_ball(der).truncated(kRootBits);
    for (int i = 0; i < d_; ++i) vec_[j].push_back(to_cball((nu * pw[d_ - 1 - i]).truncated(kRootBits)));
  }

  rho_ = 0.0;
  for (int j = 1; j < d_; ++j) rho_ = std::max(rho_, abs_up(conj_[j]));

  blocks_.clear();
  hbasis_.clear();
  int off = 0;
  for (int j = 1; j < d_; ++j) {
    if (conj_exact_[j].im == 0) {
      blocks_.push_back({j, false, off});
      std::vector<double> b(d_);
      for (int i = 0; i < d_; ++i) b[i] = vec_[j][i].c.real();
      hbasis_.push_back(b);
      off += 1;
    } else if (conj_exact_[j].im > 0) {
      blocks_.push_back({j, true, off});
      std::vector<double> br(d_), bi(d_);
      for (int i = 0; i < d_; ++i) {
        br[i] = vec_[j][i].c.real();
        bi[i] = vec_[j][i].c.imag();
      }
      hbasis_.push_back(br);
      hbasis_.push_back(bi);
      off += 2;
    }
  }

  Eigen::MatrixXd frame(d_, d_);
  std::vector<double> w = v1();
  for (int i = 0; i < d_; ++i) frame(i, 0) = w[i];
  for (int c = 0; c < d_ - 1; ++c)
    for (int i = 0; i < d_; ++i) frame(i, c + 1) = hbasis_[c][i];
  frame_det_ = std::abs(frame.determinant());
  Eigen::MatrixXd inv = frame.inverse();
  frame_inv_.assign(d_, std::vector<double>(d_));
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) frame_inv_[i][j] = inv(i, j);

  kcols_.clear();
  LatticeVec col(d_, 0);
  col[0] = 1;
  for (int k = 0; k < d_; ++k) {
    kcols_.push_back(col);
    LatticeVec nxt(d_, 0);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) nxt[i] += m_[i][j] * col[j];
    col = nxt;
  }
}

void PisotField::beta_enclosure(unsigned bits, mpq_class& lo, mpq_class& hi) const {
  lo = dyadic_floor(beta_lo_, bits);
  hi = dyadic_ceil(beta_hi_, bits);
  mpq_class target(1);
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), bits);
  int slo = sign_at(minpoly_, lo);
  while (hi - lo > target) {
    mpq_class mid = (lo + hi) / 2;
    int s = sign_at(minpoly_, mid);
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
}

std::vector<double> PisotField::v1() const {
  std::vector<double> w(d_);
  for (int i = 0; i < d_; ++i) w[i] = vec_[0][i].c.real();
  return w;
}

int PisotField::sign_of(const std::vector<mpq_class>& q) const {
  bool zero = true;
  for (const auto& c : q)
    if (c != 0) zero = false;
  if (zero) return 0;
  double s = 0, S = 0;
  bool finite = true;
  for (int k = 0; k < d_; ++k) {
    double c = q[k].get_d();
    if (!std::isfinite(c)) finite = false;
    s += c * beta_pow_d_[k];
    S += std::abs(c) * beta_pow_d_[k];
  }
  if (finite && std::isfinite(S) && std::abs(s) > 1e-11 * S && std::abs(s) > 1e-290) return s > 0 ? 1 : -1;
  for (unsigned bits = 64;; bits *= 2) {
    mpq_class lo, hi;
    beta_enclosure(bits, lo, hi);
    if (lo == hi) {
      mpq_class v = 0, pw = 1;
      for (int k = 0; k < d_; ++k) {
        v += q[k] * pw;
        pw *= lo;
      }
      return sgn(v);
    }
    mpq_class vlo = 0, vhi = 0, plo = 1, phi = 1;
    for (int k = 0; k < d_; ++k) {
      if (q[k] >= 0) {
        vlo += q[k] * plo;
        vhi += q[k] * phi;
      } else {
        vlo += q[k] * phi;
        vhi += q[k] * plo;
      }
      plo *= lo;
      phi *= hi;
    }
    if (vlo > 0) return 1;
    if (vhi < 0) return -1;
    if (bits > (1u << 20)) fail(Errc::Internal, "sign determination did not terminate");
  }
}

void PisotField::mul_beta_inplace(std::vector<mpq_class>& q) const {
  mpq_class top = q[d_ - 1];
  for (int i = d_ - 1; i >= 1; --i) q[i] = q[i - 1];
  q[0] = 0;
  if (top != 0)
    for (int i = 0; i < d_; ++i)
      if (red_[i] != 0) q[i] += top * red_[i];
}

void PisotField::div_beta_inplace(std::vector<mpq_class>& q) const {
  // 1/beta = (beta^(d-1) - c1 beta^(d-2) - ... - c_(d-1)) / c_d
  mpq_class low = q[0];
  for (int i = 0; i + 1 < d_; ++i) q[i] = q[i + 1];
  q[d_ - 1] = 0;
  if (low != 0) {
    long cd = c_[d_ - 1];
    mpq_class s = low / mpq_class(cd);
    q[d_ - 1] += s;
    for (int i = 0; i + 1 < d_; ++i) {
      long coef = c_[d_ - 2 - i];  // coefficient of beta^i is -c_(d-1-i)
      if (coef != 0) q[i] -= s * coef;
    }
  }
}

std::vector<mpq_class> PisotField::multiply(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const {
  std::vector<mpq_class> prod(2 * d_ - 1, 0);
  for (int i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d_; ++j)
      if (b[j] != 0) prod[i + j] += a[i] * b[j];
  }
  for (int k = 2 * d_ - 2; k >= d_; --k) {
    if (prod[k] == 0) continue;
    mpq_class t = prod[k];
    prod[k] = 0;
    for (int i = 0; i < d_; ++i)
      if (red_[i] != 0) prod[k - d_ + i] += t * red_[i];
  }
  prod.resize(d_);
  return prod;
}

std::vector<mpq_class> PisotField::invert(const std::vector<mpq_class>& a) const {
  // columns a * beta^i, solve for the coefficients of 1
  std::vector<std::vector<mpq_class>> mat(d_, std::vector<mpq_class>(d_ + 1, 0));
  std::vector<mpq_class> col = a;
  for (int i = 0; i < d_; ++i) {
    for (int r = 0; r < d_; ++r) mat[r][i] = col[r];
    mul_beta_inplace(col);
  }
  mat[0][d_] = 1;
  for (int c = 0; c < d_; ++c) {
    int piv = -1;
    for (int r = c; r < d_; ++r)
      if (mat[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(Errc::Internal, "inverse of zero");
    std::swap(mat[c], mat[piv]);
    mpq_class inv = 1 / mat[c][c];
    for (int k = c; k <= d_; ++k) mat[c][k] *= inv;
    for (int r = 0; r < d_; ++r) {
      if (r == c || mat[r][c] == 0) continue;
      mpq_class f = mat[r][c];
      for (int k = c; k <= d_; ++k) mat[r][k] -= f * mat[c][k];
    }
  }
  std::vector<mpq_class> out(d_);
  for (int r = 0; r < d_; ++r) out[r] = mat[r][d_];
  return out;
}

CBall PisotField::gamma(const QBeta& x, int j) const {
  CBall acc;
  const auto& q = x.coords();
  for (int k = 0; k < d_; ++k) {
    if (q[k] == 0) continue;
    acc = acc + cball_of(q[k]) * conj_pow_[j][k];
  }
  return acc;
}

RBall PisotField::gamma_exact(const QBeta& x, int j, unsigned bits) const {
  RBall z = conj_exact_[j];
  if (bits + 8 > kRootBits) {
    bool real = z.im == 0;
    z = certify_root(minpoly_, z.re, z.im, real, bits + 16);
  }
  RBall acc = RBall::exact(0), pw = RBall::exact(1);
  const auto& q = x.coords();
  for (int k = 0; k < d_; ++k) {
    acc = acc + scale(pw, q[k]);
    pw = (pw * z).truncated(bits + 24);
  }
  return acc.truncated(bits + 8);
}

HPoint PisotField::phi(const QBeta& x) const {
  HPoint p;
  p.x.assign(d_ - 1, 0.0);
  double err = 0.0;
  for (const auto& b : blocks_) {
    CBall g = gamma(x, b.conj);
    if (b.complex) {
      p.x[b.offset] = 2 * g.c.real();
      p.x[b.offset + 1] = -2 * g.c.imag();
      err += 4 * g.r;
    } else {
      p.x[b.offset] = g.c.real();
      err += g.r;
    }
  }
  p.err = err;
  return p;
}

void PisotField::act(std::vector<double>& p) const {
  for (const auto& b : blocks_) {
    const auto& z = conj_[b.conj].c;
    if (b.complex) {
      double a = p[b.offset], c = p[b.offset + 1];
      p[b.offset] = a * z.real() + c * z.imag();
      p[b.offset + 1] = c * z.real() - a * z.imag();
    } else {
      p[b.offset] *= z.real();
    }
  }
}

std::vector<double> PisotField::to_ambient(const std::vector<double>& h) const {
  std::vector<double> y(d_, 0.0);
  for (int c = 0; c < d_ - 1; ++c)
    for (int i = 0; i < d_; ++i) y[i] += h[c] * hbasis_[c][i];
  return y;
}

std::vector<double> PisotField::from_ambient_h(const std::vector<double>& y, double& t) const {
  std::vector<double> sol(d_, 0.0);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) sol[i] += frame_inv_[i][j] * y[j];
  t = sol[0];
  return std::vector<double>(sol.begin() + 1, sol.end());
}

std::vector<mpq_class> PisotField::psi_rational(const QBeta& x) const {
  std::vector<mpq_class> v(d_, 0);
  const auto& q = x.coords();
  for (int k = 0; k < d_; ++k)
    for (int i = 0; i < d_; ++i)
      if (kcols_[k][i] != 0) v[i] += q[k] * mpq_class(kcols_[k][i]);
  return v;
}

LatticeVec PisotField::psi(const QBeta& x) const {
  auto v = psi_rational(x);
  LatticeVec out(d_);
  for (int i = 0; i < d_; ++i) {
    if (v[i].get_den() != 1) fail(Errc::DigitsNotIntegral, "psi of a non-integral element");
    out[i] = v[i].get_num();
  }
  return out;
}

QBeta PisotField::pi1(const std::vector<mpq_class>& v) const {
  std::vector<mpq_class> y(d_, 0);
  for (int k = d_ - 1; k >= 0; --k) {
    mpq_class s = v[k];
    for (int k2 = k + 1; k2 < d_; ++k2) s -= mpq_class(kcols_[k2][k]) * y[k2];
    y[k] = s;
  }
  return QBeta(self(), y);
}

}  // namespace betatile
