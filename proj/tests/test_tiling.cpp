#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>

#include "common.hpp"

using namespace tst;

namespace {

struct Setup {
  RunConfig rc;
  VData v;
  Density h;
  Gifs g;
  PeriodicSet p;
  explicit Setup(const std::string& name)
      : rc(config(name)),
        v(compute_v(rc.transform)),
        h(invariant_density(rc.transform, v)),
        g(gifs_build(rc.transform, v)),
        p(purely_periodic_points(rc.transform)) {}
  const FieldPtr& f() const { return rc.field; }
  const BetaTransform& t() const { return rc.transform; }
};

const std::vector<std::string> kConfigs = {"golden_greedy.json",          "golden_minweight.json",
                                           "golden_pm1.json",             "golden_symmetric.json",
                                           "tribonacci_symmetric.json",   "smallest_pisot_symmetric.json",
                                           "cubic_2_-1_1_symmetric.json", "cubic_1_0_1_symmetric.json"};

std::vector<double> col(const TileCloud& c, std::size_t i) {
  std::vector<double> p;
  for (const auto& x : c.x) p.push_back(x[i]);
  return p;
}

// every point of a lies within tol of some point of b
bool near_all(const TileCloud& a, const TileCloud& b, double tol) {
  std::map<std::vector<long>, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<long> k;
    for (const auto& x : b.x) k.push_back(long(std::floor(x[i] / tol)));
    grid[k].push_back(i);
  }
  int dim = int(a.x.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<double> p = col(a, i);
    std::vector<long> k0;
    for (double v : p) k0.push_back(long(std::floor(v / tol)));
    bool found = false;
    std::vector<long> off(dim, -1);
    for (;;) {
      std::vector<long> k = k0;
      for (int j = 0; j < dim; ++j) k[j] += off[j];
      auto it = grid.find(k);
      if (it != grid.end())
        for (std::size_t q : it->second) {
          double d2 = 0;
          for (int j = 0; j < dim; ++j) d2 += (b.x[j][q] - p[j]) * (b.x[j][q] - p[j]);
          found = found || d2 <= tol * tol;
        }
      int j = 0;
      while (j < dim && off[j] == 1) off[j++] = -1;
      if (j == dim || found) break;
      ++off[j];
    }
    if (!found) return false;
  }
  return true;
}

double dist_to(const TileCloud& c, const std::vector<double>& p) {
  double best = INFINITY;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double d2 = 0;
    for (size_t j = 0; j < p.size(); ++j) d2 += (c.x[j][i] - p[j]) * (c.x[j][i] - p[j]);
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

std::vector<QBeta> points_of(const PeriodicSet& p) {
  std::vector<QBeta> out;
  for (const auto& x : p.points) out.push_back(x.x);
  return out;
}

std::vector<QBeta> sorted(std::vector<QBeta> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("golden greedy natural extension") {
  Setup s("golden_greedy.json");
  CHECK(points_of(s.p) == std::vector<QBeta>{QBeta(s.f())});
  CHECK(check_f(s.p).holds);
  int k = depth_for(s.g, 1e-3);
  NatExt nx = natext_domain(s.g, s.h, k);
  CHECK(nx.err < 2e-3);
  CHECK(nx.area == doctest::Approx(1.0).epsilon(0.02));
  Membership m = tiles_containing(s.t(), s.p, I(s.f(), 1));
  CHECK(m.owners.size() == 1);
  TorusCoverage tc = torus_translates(s.g, nx, 2, 4000);
  CHECK(tc.fraction_one > 0.97);
}

TEST_CASE("golden A = {-1, 1}: a fourfold covering") {
  Setup s("golden_pm1.json");
  auto f = s.f();
  std::vector<QBeta> P = {I(f, -1), -B(f, -1), -B(f, -2), QBeta(f), B(f, -2)};
  CHECK(points_of(s.p) == P);
  CHECK_FALSE(check_f(s.p).holds);

  auto clouds = tile_clouds(s.g, 20);
  double b = f->beta_approx();
  std::vector<std::pair<double, double>> ends = {{-1 / b, b * b}, {-b * b, b * b}, {-b * b, 1 / b}};
  for (int v = 0; v < 3; ++v) {
    std::vector<double> lo, hi;
    bounding_box(clouds[v], lo, hi);
    CHECK(std::abs(lo[0] - ends[v].first) <= clouds[v].err);
    CHECK(std::abs(hi[0] - ends[v].second) <= clouds[v].err);
  }
  CHECK(tiles_containing(s.t(), s.p, I(f, 1)).owners.size() == 4);
  QBeta beta = QBeta::beta(f);
  std::vector<QBeta> samples = {I(f, 1), beta, I(f, 2), I(f, 1) + beta, I(f, 3)};
  CoveringEstimate c = covering_degree_estimate(s.t(), s.p, samples);
  CHECK(c.min == 4);
  CHECK(c.max == 4);

  NatExt nx = natext_domain(s.g, s.h, 16);
  CHECK(nx.area == doctest::Approx(4.0).epsilon(0.02));
  TorusCoverage tc = torus_translates(s.g, nx, 2, 2000, 2);
  CHECK(tc.fraction_one > 0.97);
}

TEST_CASE("golden symmetric: property (W) with the displayed witness") {
  Setup s("golden_symmetric.json");
  auto f = s.f();
  const BetaTransform& t = s.t();
  QBeta y = B(f, -2), z = B(f, -5);
  CHECK(points_of(s.p) == std::vector<QBeta>{-y, y});
  CHECK_FALSE(check_f(s.p).holds);

  WCheck w = check_w(t, s.p);
  REQUIRE(w.status == WStatus::Holds);
  CHECK(w.common);
  CHECK(w.x == y);
  CHECK(w.epsilon == I(f, 1).pow_beta(-3).scaled(mpq_class(1, 2)));
  REQUIRE(w.witnesses.size() == 2);
  for (const auto& wt : w.witnesses) {
    CHECK(wt.z == z);
    CHECK(wt.k == 3);
  }
  // the two displayed chains
  std::vector<QBeta> c1 = {y + z, Q(f, {"2"}).pow_beta(-3), -B(f, -3), -B(f, -2), y};
  std::vector<QBeta> c2 = {-y + z, Q(f, {"-2"}).pow_beta(-4), Q(f, {"-2"}).pow_beta(-3), B(f, -3), y};
  CHECK(c1[0] == c1[1]);
  CHECK(c2[0] == c2[1]);
  for (auto* c : {&c1, &c2})
    for (size_t i = 1; i + 1 < c->size(); ++i) CHECK(step(t, (*c)[i]).image == (*c)[i + 1]);
}

TEST_CASE("tribonacci symmetric: a double covering") {
  Setup s("tribonacci_symmetric.json");
  auto f = s.f();
  QBeta b = QBeta::beta(f), one = I(f, 1);
  std::vector<QBeta> P = sorted({B(f, -3), -B(f, -3), B(f, -2), -B(f, -2), one - B(f, -1), B(f, -1) - one});
  CHECK(points_of(s.p) == P);
  int i = s.p.find(B(f, -3));
  REQUIRE(i >= 0);
  CHECK(s.p.points[i].cycle == ds(s.t(), {0, 1, -1}));

  Membership m = tiles_containing(s.t(), s.p, I(f, 4));
  // 4 - 2 beta^2 is far outside X; the second owner is 4 - 2 beta
  CHECK_FALSE(s.t().contains(I(f, 4) - (b * b).scaled(2)));
  CHECK(m.owners == sorted({I(f, 3) - b * b, I(f, 4) - b.scaled(2)}));
  CoveringEstimate c = covering_degree_estimate(s.t(), s.p, default_samples(s.t(), 50));
  CHECK(c.min == 2);
  WCheck w = check_w(s.t(), s.p, 400);
  CHECK(w.status == WStatus::FailsByBudget);
}

TEST_CASE("smallest Pisot symmetric") {
  Setup s("smallest_pisot_symmetric.json");
  auto f = s.f();
  QBeta b = QBeta::beta(f);
  QBeta x = I(f, 3) - b.scaled(2);
  REQUIRE(s.p.points.size() == 8);
  int i = s.p.find(x);
  REQUIRE(i >= 0);
  CHECK(s.p.points[i].cycle == ds(s.t(), {0, 1, -1, 1, 0, -1, 1, -1}));
  // the set is one orbit
  QBeta y = x;
  for (int k = 0; k < 8; ++k) {
    CHECK(s.p.find(y) >= 0);
    y = step(s.t(), y).image;
  }
  CHECK(y == x);
  Membership m = tiles_containing(s.t(), s.p, I(f, 2));
  CHECK(m.owners == sorted({x, (b * b).scaled(2) - b.scaled(3)}));
}

TEST_CASE("cubic one-point tiles") {
  {
    Setup s("cubic_2_-1_1_symmetric.json");
    auto f = s.f();
    QBeta b = QBeta::beta(f);
    Membership m = tiles_containing(s.t(), s.p, I(f, 4));
    CHECK(m.owners == std::vector<QBeta>{I(f, 3) + b.scaled(2) - (b * b).scaled(2)});
  }
  {
    Setup s("cubic_1_0_1_symmetric.json");
    auto f = s.f();
    QBeta b = QBeta::beta(f);
    CHECK(points_of(s.p) == sorted({B(f, -2), -B(f, -2), B(f, -3), -B(f, -3)}));
    Membership m = tiles_containing(s.t(), s.p, I(f, 4));
    CHECK(m.owners == std::vector<QBeta>{I(f, 4) - b - b * b});
  }
}

TEST_CASE("membership errors") {
  Setup s("golden_greedy.json");
  auto code = [&](const QBeta& z) {
    try {
      tiles_containing(s.t(), s.p, z);
    } catch (const Error& e) {
      return std::string(errc_name(e.code()));
    }
    return std::string("ok");
  };
  CHECK(code(I(s.f(), -1)) == "OutOfDomain");
  CHECK(code(Q(s.f(), {"1/2"})) == "DigitsNotIntegral");
  CHECK(code(I(s.f(), 7)) == "ok");
}

TEST_CASE("property: one refinement step reproduces the next depth") {
  for (const auto& name : kConfigs) {
    CAPTURE(name);
    Setup s(name);
    auto c5 = tile_clouds(s.g, 5), c6 = tile_clouds(s.g, 6);
    double rho = s.f()->rho(), C = s.g.C;
    // both are six-fold images of {0}; they differ only by snapping
    double tol = rho * (c5[0].err - C * std::pow(rho, 5)) + (c6[0].err - C * std::pow(rho, 6)) + 1e-9;
    for (size_t v = 0; v < c5.size(); ++v) {
      TileCloud r = refine_once(s.g, c5, int(v));
      CHECK(r.depth == 6);
      CHECK(near_all(r, c6[v], tol));
      CHECK(near_all(c6[v], r, tol));
    }
  }
}

TEST_CASE("property: GIFS edges follow the exact rule") {
  for (const auto& name : kConfigs) {
    CAPTURE(name);
    Setup s(name);
    const BetaTransform& t = s.g.t;
    std::vector<int> outdeg(s.v.points.size(), 0);
    for (size_t x = 0; x < s.v.points.size(); ++x)
      for (size_t a = 0; a < t.digits().size(); ++a)
        for (size_t x2 = 0; x2 < s.v.points.size(); ++x2) {
          QBeta y = (s.v.points[x] + t.digits()[a]).div_beta();
          bool want = t.parts()[a].contains_right(y) && s.v.index_of(y) == int(x2);
          bool got = false;
          for (int e : s.g.out[x]) {
            const auto& ed = s.g.edges[e];
            got = got || (ed.to == int(x2) && ed.digit == int(a));
          }
          CHECK(want == got);
          outdeg[x] += got;
        }
    // every D_x is nonempty
    for (int d : outdeg) CHECK(d >= 1);
  }
}

TEST_CASE("property: the origin lies in the tiles of purely periodic points") {
  for (const auto& name : kConfigs) {
    CAPTURE(name);
    Setup s(name);
    auto clouds = tile_clouds(s.g, s.f()->degree() == 2 ? 16 : 12);
    for (const auto& pp : s.p.points) {
      HPoint ph = s.f()->phi(pp.x);
      std::vector<double> neg;
      for (double v : ph.x) neg.push_back(-v);
      int v = s.v.index_of(pp.x);
      REQUIRE(v >= 0);
      CHECK(dist_to(clouds[v], neg) <= clouds[v].err + ph.err + 1e-9);
    }
  }
}

TEST_CASE("property: owners contain Phi(z) geometrically") {
  for (const auto& name : {"golden_pm1.json", "tribonacci_symmetric.json", "smallest_pisot_symmetric.json",
                           "cubic_1_0_1_symmetric.json"}) {
    CAPTURE(name);
    Setup s(name);
    auto clouds = tile_clouds(s.g, s.f()->degree() == 2 ? 16 : 12);
    for (const auto& z : default_samples(s.t(), 12)) {
      Membership m = tiles_containing(s.t(), s.p, z);
      CHECK(!m.owners.empty());
      HPoint pz = s.f()->phi(z);
      for (const auto& x : m.owners) {
        HPoint px = s.f()->phi(x);
        std::vector<double> d;
        for (size_t j = 0; j < pz.x.size(); ++j) d.push_back(pz.x[j] - px.x[j]);
        int v = s.v.index_of(x);
        REQUIRE(v >= 0);
        CHECK(dist_to(clouds[v], d) <= clouds[v].err + pz.err + px.err + 1e-9);
      }
    }
  }
}

TEST_CASE("property: covering counts do not depend on the sample order") {
  Setup s("tribonacci_symmetric.json");
  auto samples = default_samples(s.t(), 20);
  CoveringEstimate a = covering_degree_estimate(s.t(), s.p, samples);
  std::reverse(samples.begin(), samples.end());
  CoveringEstimate b = covering_degree_estimate(s.t(), s.p, samples);
  std::reverse(b.counts.begin(), b.counts.end());
  CHECK(a.counts == b.counts);
  for (const auto& z : samples) CHECK(z.sign() >= 0);
}

TEST_CASE("property: density matches the measure of the tiles") {
  for (const auto& name : kConfigs) {
    CAPTURE(name);
    Setup s(name);
    double eps = s.f()->degree() == 2 ? 1e-3 : name == "smallest_pisot_symmetric.json" ? 0.05 : 0.02;
    NatExt nx = natext_domain(s.g, s.h, depth_for(s.g, eps));
    for (size_t v = 0; v < nx.clouds.size(); ++v) {
      if (!s.h.support[v]) continue;
      double h = nx.measure[v] * s.f()->frame_det() / nx.area;
      CHECK(h == doctest::Approx(s.h.h_approx[v]).epsilon(0.05));
    }
  }
}

TEST_CASE("property: the k-th digit from the lattice") {
  for (const auto& name : {"golden_pm1.json", "golden_symmetric.json", "smallest_pisot_symmetric.json",
                           "cubic_1_0_1_symmetric.json"}) {
    CAPTURE(name);
    Setup s(name);
    NatExt nx = natext_domain(s.g, s.h, s.f()->degree() == 2 ? 16 : 12);
    std::vector<double> v1 = s.f()->v1();
    int tried = 0, hit = 0;
    for (const auto& pp : s.p.points) {
      Expansion e = expand(s.t(), pp.x);
      for (int k = 1; k <= 12; ++k) {
        double c = (pp.x.pow_beta(k - 1)).approx();
        std::vector<double> p;
        for (double x : v1) p.push_back(c * x - std::round(c * x));
        int want = k <= e.preperiod() ? e.word.pre[k - 1] : e.word.per[(k - 1 - e.preperiod()) % e.period()];
        auto got = torus_digits(s.g, nx, p, 4);
        ++tried;
        hit += std::find(got.begin(), got.end(), want) != got.end();
      }
    }
    // points on a cell boundary may miss at cloud resolution
    CHECK(hit >= tried * 9 / 10);
  }
}
