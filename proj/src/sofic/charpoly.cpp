#include <cmath>
#include <cstdint>

#include "betatile/error.hpp"
#include "betatile/sofic.hpp"

namespace betatile {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return u64((unsigned __int128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

// deterministic Miller-Rabin for 64-bit n
bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s && comp; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

// Hessenberg reduction, then the usual recurrence for det(xI - H)
std::vector<u64> charpoly_mod(const std::vector<std::vector<long>>& a0, u64 p) {
  int n = int(a0.size());
  std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long v = a0[i][j] % long(p);
      h[i][j] = u64(v < 0 ? v + long(p) : v);
    }
  for (int m = 1; m < n - 1; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (h[i][m - 1]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (int i = 0; i < n; ++i) std::swap(h[i][piv], h[i][m]);
    }
    u64 inv = powmod(h[m][m - 1], p - 2, p);
    for (int i = m + 1; i < n; ++i) {
      u64 u = mulmod(h[i][m - 1], inv, p);
      if (!u) continue;
      // row_i -= u row_m ; col_m += u col_i
      for (int j = 0; j < n; ++j) h[i][j] = (h[i][j] + p - mulmod(u, h[m][j], p)) % p;
      for (int j = 0; j < n; ++j) h[j][m] = (h[j][m] + mulmod(u, h[j][i], p)) % p;
    }
  }
  // c[k] = charpoly of the leading k x k block
  std::vector<std::vector<u64>> c(n + 1);
  c[0] = {1};
  for (int k = 1; k <= n; ++k) {
    std::vector<u64> r(k + 1, 0);
    // (x - h[k-1][k-1]) c[k-1]
    for (int i = 0; i < k; ++i) {
      r[i + 1] = (r[i + 1] + c[k - 1][i]) % p;
      r[i] = (r[i] + p - mulmod(h[k - 1][k - 1], c[k - 1][i], p)) % p;
    }
    u64 t = 1;
    for (int m = 1; m < k; ++m) {
      t = mulmod(t, h[k - m][k - m - 1], p);
      u64 coef = mulmod(t, h[k - m - 1][k - 1], p);
      if (!coef) continue;
      for (std::size_t i = 0; i < c[k - m - 1].size(); ++i)
        r[i] = (r[i] + p - mulmod(coef, c[k - m - 1][i], p)) % p;
    }
    c[k] = std::move(r);
  }
  return c[n];
}

}  // namespace

ZPoly charpoly(const std::vector<std::vector<long>>& a) {
  int n = int(a.size());
  for (const auto& row : a)
    if (int(row.size()) != n) fail(Errc::Internal, "charpoly needs a square matrix");
  if (n == 0) return ZPoly{1};
  // |coefficients| <= (1 + max absolute row sum)^n since they are elementary symmetric in the eigenvalues
  double s = 0;
  for (const auto& row : a) {
    double r = 0;
    for (long v : row) r += std::fabs(double(v));
    s = std::max(s, r);
  }
  double bits = double(n) * std::log2(1.0 + s) + 2;
  std::vector<mpz_class> acc(n + 1, 0);
  mpz_class mod = 1;
  u64 p = (u64(1) << 62) - 57;
  while (mpz_sizeinbase(mod.get_mpz_t(), 2) < bits + 1) {
    while (!is_prime(p)) p -= 2;
    std::vector<u64> r = charpoly_mod(a, p);
    mpz_class P;
    mpz_import(P.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    // CRT: acc + mod * ((r - acc) * mod^-1 mod P)
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), P.get_mpz_t());
    for (int i = 0; i <= n; ++i) {
      mpz_class ri;
      mpz_import(ri.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &r[i]);
      mpz_class d = (ri - acc[i]) * inv;
      mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
      acc[i] += mod * d;
    }
    mod *= P;
    p -= 2;
  }
  mpz_class half = mod / 2;
  for (auto& c : acc)
    if (c > half) c -= mod;
  return acc;
}

}  // namespace betatile
