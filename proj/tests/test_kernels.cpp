#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>

#include "betatile/kernels.hpp"
#include "common.hpp"

using namespace tst;
namespace k = betatile::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_values(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> u(-50, 50);
  std::vector<double> v(n);
  for (auto& x : v) x = u(g);
  if (n > 3) {
    v[0] = 0.0;
    v[1] = -0.0;
    v[2] = 1e-300;
    v[3] = -3.0;  // exact cell boundary
  }
  return v;
}

}  // namespace

TEST_CASE("dispatch") {
  k::Isa d = k::detected_isa();
  k::set_isa(k::Isa::Scalar);
  CHECK(k::active_isa() == k::Isa::Scalar);
  k::set_isa(k::Isa::Avx2);
  CHECK(k::active_isa() == d);
  CHECK(std::string(k::isa_name(k::Isa::Avx2)) == "avx2");
  CHECK(std::string(k::isa_name(k::Isa::Scalar)) == "scalar");
  k::set_isa(d);
}

TEST_CASE("scalar kernels") {
  std::vector<double> x = {1, -2, 0.5}, y(3);
  k::scalar::scale_shift(x.data(), y.data(), 3, 2.0, 1.0);
  CHECK(y == std::vector<double>{3, -3, 2});
  std::vector<double> a = {1, 0}, b = {0, 1}, oa(2), ob(2);
  // multiplication by the conjugate of p + iq, then a shift
  k::scalar::rot_shift(a.data(), b.data(), oa.data(), ob.data(), 2, 0.0, 1.0, 10.0, 20.0);
  CHECK(oa == std::vector<double>{10, 11});
  CHECK(ob == std::vector<double>{19, 20});
  std::vector<std::int64_t> c(3);
  k::scalar::cell_index(x.data(), c.data(), 3, 2.0);
  CHECK(c == std::vector<std::int64_t>{2, -4, 1});
}

TEST_CASE("property: AVX2 variants are bit-identical to the scalar reference") {
  if (!k::avx2::available()) {
    MESSAGE("AVX2 not available, only the scalar path runs");
    return;
  }
  std::mt19937_64 g(41);
  std::uniform_real_distribution<double> u(-2, 2);
  for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 31, 64, 1001}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto x = random_values(g, n), y = random_values(g, n);
      double p = u(g), q = u(g), s = u(g), t = u(g);
      std::vector<double> r1(n), r2(n), r3(n), r4(n);
      k::scalar::scale_shift(x.data(), r1.data(), n, s, t);
      k::avx2::scale_shift(x.data(), r2.data(), n, s, t);
      CHECK(same_bits(r1, r2));
      k::scalar::rot_shift(x.data(), y.data(), r1.data(), r3.data(), n, p, q, s, t);
      k::avx2::rot_shift(x.data(), y.data(), r2.data(), r4.data(), n, p, q, s, t);
      CHECK(same_bits(r1, r2));
      CHECK(same_bits(r3, r4));
      std::vector<std::int64_t> c1(n), c2(n);
      double inv = std::abs(p) * 1e3 + 1;
      k::scalar::cell_index(x.data(), c1.data(), n, inv);
      k::avx2::cell_index(x.data(), c2.data(), n, inv);
      CHECK(c1 == c2);
    }
  }
}

TEST_CASE("property: clouds do not depend on the instruction set") {
  for (const auto& name : {"golden_pm1.json", "tribonacci_symmetric.json", "cubic_2_-1_1_symmetric.json"}) {
    CAPTURE(name);
    RunConfig rc = config(name);
    Gifs g = gifs_build(rc.transform, compute_v(rc.transform));
    k::Isa keep = k::active_isa();
    k::set_isa(k::Isa::Scalar);
    auto a = tile_clouds(g, 12);
    k::set_isa(k::Isa::Avx2);
    auto b = tile_clouds(g, 12);
    k::set_isa(keep);
    REQUIRE(a.size() == b.size());
    for (size_t v = 0; v < a.size(); ++v) {
      CHECK(a[v].err == b[v].err);
      for (size_t c = 0; c < a[v].x.size(); ++c) CHECK(same_bits(a[v].x[c], b[v].x[c]));
    }
  }
}
