#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "common.hpp"

using namespace tst;

namespace {

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return errc_name(e.code());
  }
  return "ok";
}

QBeta tribo_alpha() {
  auto f = tribonacci();
  return I(f, 1) / (QBeta::beta(f) + I(f, 1));
}

QBeta smallest_alpha() {
  auto f = smallest();
  return B(f, 6) / (B(f, 8) - I(f, 1));
}

std::vector<BetaTransform> preset_zoo() {
  auto g = golden(), t = tribonacci(), s = smallest(), p2 = PisotField::make({2, 1});
  return {preset_greedy(g),
          preset_greedy(t),
          preset_greedy(s),
          preset_lazy(g),
          preset_lazy(t),
          preset_pedicini(g, {I(g, 0), I(g, 1), I(g, 2)}),
          preset_pedicini(p2, {I(p2, 0), I(p2, 1), I(p2, 3)}),
          preset_linear_mod1(g, Q(g, {"1/3"})),
          preset_minimal_weight(g, Q(g, {"17/5", "-9/5"})),
          preset_minimal_weight(t, tribo_alpha()),
          preset_symmetric(g),
          preset_symmetric(t),
          preset_symmetric(s)};
}

}  // namespace

TEST_CASE("greedy golden transformation") {
  auto f = golden();
  BetaTransform t = preset_greedy(f);
  REQUIRE(t.digits().size() == 2);
  CHECK(t.ordered());
  CHECK(t.side() == Side::Right);
  CHECK(t.digits_integral());
  StepResult s = step(t, B(f, -1));
  CHECK(s.digit == 1);
  CHECK(s.image.is_zero());
  CHECK(code_of([&] { step(t, I(f, 1)); }) == "OutOfDomain");
  CHECK(code_of([&] { step(t, I(f, -1)); }) == "OutOfDomain");

  Expansion e = expand(t, Q(f, {"-1", "1"}));
  CHECK(e.word == word(t, {1}, {0}));
  // 1/2 = .(010)^w in base golden ratio? check against the oracle
  Expansion h = expand(t, Q(f, {"1/2"}));
  CHECK(word_value(t, h.word) == Q(f, {"1/2"}));
  CHECK(double(word_value_ld(t, h.word)) == doctest::Approx(0.5).epsilon(1e-15));

  VData v = compute_v(t);
  REQUIRE(v.points.size() == 2);
  CHECK(v.points[0].is_zero());
  CHECK(v.points[1] == B(f, -1));
  CHECK(v.J[1].hi == I(f, 1));

  Density d = invariant_density(t, v);
  REQUIRE(d.exact);
  // Parry density 1 + [x < 1/beta] / beta, normalised
  double b = f->beta_approx();
  CHECK(d.h_approx[1] == doctest::Approx(b * b / (b * b + 1)).epsilon(1e-12));
  CHECK(d.h_approx[0] == doctest::Approx(b * b * b / (b * b + 1)).epsilon(1e-12));
}

TEST_CASE("golden minimal weight endpoints and V") {
  auto f = golden();
  QBeta alpha = (QBeta::beta(f) + B(f, -4)) / (B(f, 2) + I(f, 1));
  BetaTransform t = preset_minimal_weight(f, alpha);
  BetaTransform lt = t.twin();
  CHECK(lt.side() == Side::Left);
  CHECK(expand(lt, -alpha).word == word(t, {-1, 0, 0, 1, 0}, {0, 0, 0, -1}));
  CHECK(expand(t, -alpha).word == word(t, {0, -1}, {0, 0, -1, 0}));
  CHECK(expand(lt, alpha).word == word(t, {0, 1}, {0, 0, 1, 0}));
  CHECK(expand(t, alpha).word == word(t, {1, 0, 0, -1, 0}, {0, 0, 0, 1}));

  VData v = compute_v(t);
  CHECK(v.points.size() == 15);
  for (const auto& d : v.disc) CHECK(d.m == 5);
  std::vector<Word> listed = {word(t, {-1}, {0, 0, -1, 0}), word(t, {}, {-1, 0, 0, 0}), word(t, {-1, 0}, {0, 0, 0, 1}),
                              word(t, {}, {0, -1, 0, 0}),     word(t, {0, -1, 0}, {0, 0, 0, 1}), word(t, {}, {0, 0, -1, 0}),
                              word(t, {0, 0, -1, 0}, {0, 0, 0, 1}), word(t, {0}, {0, 0, 0, -1}), word(t, {0}, {0, 0, 0, 1}),
                              word(t, {0, 0, 1, 0}, {0, 0, 0, -1}), word(t, {}, {0, 0, 1, 0}), word(t, {0, 1, 0}, {0, 0, 0, -1}),
                              word(t, {}, {0, 1, 0, 0}),      word(t, {1, 0}, {0, 0, 0, -1}), word(t, {}, {1, 0, 0, 0})};
  for (const auto& w : listed) CHECK(contains(v.points, word_value(t, w)));
}

TEST_CASE("tribonacci and smallest Pisot minimal weight") {
  {
    auto f = tribonacci();
    QBeta a = tribo_alpha(), b = QBeta::beta(f);
    BetaTransform t = preset_minimal_weight(f, a);
    BetaTransform lt = t.twin();
    CHECK(expand(lt, -a).word == word(t, {-1}, {0, 1, 0}));
    CHECK(expand(t, -a).word == word(t, {}, {0, -1, 0}));
    CHECK(expand(lt, a).word == word(t, {}, {0, 1, 0}));
    CHECK(expand(t, a).word == word(t, {1}, {0, -1, 0}));
    VData v = compute_v(t);
    std::vector<QBeta> expect = {-b * a, -a, -a.div_beta(), a.div_beta(), a};
    CHECK(v.points == expect);
  }
  {
    auto f = smallest();
    QBeta a = smallest_alpha();
    BetaTransform t = preset_minimal_weight(f, a);
    CHECK(expand(t.twin(), a).word == word(t, {}, {0, 1, 0, 0, 0, 0, 0, 0}));
    CHECK(expand(t, a).word == word(t, {1}, {0, 0, 0, 0, 0, 0, -1, 0}));
    VData v = compute_v(t);
    std::vector<QBeta> expect;
    QBeta den = B(f, 8) - I(f, 1);
    for (int k = 0; k <= 7; ++k) {
      expect.push_back(B(f, k) / den);
      if (k != 7) expect.push_back(-B(f, k) / den);
    }
    std::sort(expect.begin(), expect.end());
    // the lower end of X is in V as well
    std::vector<QBeta> got = v.points;
    got.erase(got.begin());
    CHECK(v.points.front() == -B(f, 7) / den);
    CHECK(got.size() == expect.size() - 1);
    for (const auto& x : got) CHECK(contains(expect, x));
  }
}

TEST_CASE("Fig. 5 transformation") {
  RunConfig rc = config("golden_pm1.json");
  auto f = rc.field;
  const BetaTransform& t = rc.transform;
  VData v = compute_v(t);
  std::vector<QBeta> expect = {I(f, -1), -B(f, -1), B(f, -1)};
  CHECK(v.points == expect);
  BetaTransform lt = t.twin();
  QBeta z(f);
  CHECK(step(lt, step(lt, step(lt, z).image).image).image.is_zero());
  CHECK(step(t, step(t, step(t, z).image).image).image.is_zero());
}

TEST_CASE("transformation errors") {
  auto f = golden();
  auto iv = [&](long a, long b) { return Interval{I(f, a), I(f, b)}; };
  CHECK(code_of([&] { BetaTransform::build(f, {I(f, 0), I(f, 1)}, {{iv(0, 1)}, {iv(0, 1)}}); }) == "Overlap");
  CHECK(code_of([&] { BetaTransform::build(f, {I(f, 0)}, {{iv(0, 1)}}); }) == "NotSurjective");
  CHECK(code_of([&] { BetaTransform::build(f, {I(f, 0), I(f, 1)}, {{iv(0, 1)}, {}}); }) == "EmptyPart");
  CHECK(code_of([&] { BetaTransform::build(f, {I(f, 0), I(f, 1)}, {{iv(0, 1)}, {iv(1, 1)}}); }) == "EmptyPart");
  auto p2 = PisotField::make({2, 1});
  CHECK(code_of([&] { preset_pedicini(p2, {I(p2, 0), I(p2, 1), I(p2, 10)}); }) == "PediciniGapViolated");
  CHECK(code_of([&] { preset_linear_mod1(f, I(f, 1)); }) == "BadAlpha");
  CHECK(code_of([&] { preset_minimal_weight(f, I(f, 0)); }) == "BadAlpha");
  // alpha too large: beta alpha overlaps nothing sensible
  CHECK(code_of([&] { preset_minimal_weight(f, I(f, 3)); }) == "BadAlpha");
  BetaTransform t = preset_greedy(f);
  CHECK(code_of([&] { expand(t, Q(f, {"1/2"}), 1); }) == "BudgetExceeded");
}

TEST_CASE("restriction to the support") {
  RunConfig rc = config("tribonacci_symmetric.json");
  auto f = rc.field;
  CHECK(rc.restricted);
  QBeta h = Q(f, {"1/2"}), e = h.pow_beta(-3);
  std::vector<Interval> expect = {{-h, -e}, {e, h}};
  const auto& got = rc.transform.domain().pieces();
  REQUIRE(got.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(got[i].lo == expect[i].lo);
    CHECK(got[i].hi == expect[i].hi);
  }
  QBeta x = B(f, -3);
  CHECK(expand(rc.transform, x).word == word(rc.transform, {}, {0, 1, -1}));
  CHECK(expand(rc.transform, -x).word == word(rc.transform, {}, {0, -1, 1}));

  RunConfig sp = config("smallest_pisot_symmetric.json");
  auto g = sp.field;
  QBeta b = QBeta::beta(g), half = Q(g, {"1/2"});
  std::vector<Interval> xs = {{-half, (b * b).scaled(mpq_class(1, 2)) - b},
                              {b * b - b.scaled(mpq_class(1, 2)) - Q(g, {"3/2"}), b.scaled(mpq_class(1, 2)) - I(g, 1)},
                              {I(g, 1) - b.scaled(mpq_class(1, 2)), Q(g, {"3/2"}) + b.scaled(mpq_class(1, 2)) - b * b},
                              {b - (b * b).scaled(mpq_class(1, 2)), half}};
  const auto& sg = sp.transform.domain().pieces();
  REQUIRE(sg.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(sg[i].lo == xs[i].lo);
    CHECK(sg[i].hi == xs[i].hi);
  }
}

TEST_CASE("lazy transformation is left continuous") {
  auto f = golden();
  BetaTransform t = preset_lazy(f);
  CHECK(t.side() == Side::Left);
  CHECK(t.contains(QBeta::beta(f)));
  CHECK_FALSE(t.contains(QBeta(f)));
  Expansion e = expand(t, QBeta::beta(f));
  CHECK(e.word == word(t, {}, {1}));
}

TEST_CASE("property: expansions are admissible and sum to the point") {
  std::mt19937_64 g(21);
  for (const auto& t : preset_zoo()) {
    Endpoints ep = t.ordered() && t.side() == Side::Right ? endpoint_expansions(t) : Endpoints{};
    for (int i = 0; i < 1000; ++i) {
      QBeta x = random_point(g, t);
      Expansion e = expand(t, x);
      CHECK(word_value(t, e.word) == x);
      if (i < 50) CHECK(double(std::abs(word_value_ld(t, e.word) - value_ld(x))) <= 1e-12);
      CHECK(is_admissible_by_value(t, e.word));
      if (!ep.lower.empty()) CHECK(is_admissible(t, ep, e.word));
      for (size_t k = 0; k < e.orbit.size(); ++k) CHECK(t.contains(e.orbit[k]));
    }
  }
}

TEST_CASE("property: lexicographic and value admissibility agree") {
  std::mt19937_64 g(22);
  for (const auto& t : preset_zoo()) {
    if (!t.ordered() || t.side() != Side::Right) continue;
    Endpoints ep = endpoint_expansions(t);
    std::uniform_int_distribution<int> dig(0, int(t.digits().size()) - 1), len(0, 5), plen(1, 5);
    int yes = 0;
    for (int i = 0; i < 2000; ++i) {
      Word w;
      for (int k = len(g); k > 0; --k) w.pre.push_back(dig(g));
      for (int k = plen(g); k > 0; --k) w.per.push_back(dig(g));
      bool a = is_admissible(t, ep, w), b = is_admissible_by_value(t, w);
      CHECK(a == b);
      yes += a;
    }
    CHECK(yes > 0);
  }
}

TEST_CASE("property: monotonicity of expansions") {
  std::mt19937_64 g(23);
  for (const auto& t : preset_zoo()) {
    if (!t.ordered()) continue;
    for (int i = 0; i < 300; ++i) {
      QBeta x = random_point(g, t), y = random_point(g, t);
      if (x == y) continue;
      int c = lex_compare(t, expand(t, x).word, expand(t, y).word);
      CHECK(c == (x < y ? -1 : 1));
    }
  }
}

TEST_CASE("property: twins agree off the discontinuity orbits") {
  std::mt19937_64 g(24);
  for (const auto& t : preset_zoo()) {
    BetaTransform lt = t.twin();
    CHECK(lt.twin().side() == t.side());
    VData v = compute_v(t);
    for (int i = 0; i < 200; ++i) {
      QBeta x = random_point(g, t);
      if (!lt.contains(x) || contains(v.points, x)) continue;
      // the right and left orbits coincide until one hits an endpoint
      Expansion a = expand(t, x), b = expand(lt, x);
      bool hit = false;
      for (const auto& y : a.orbit)
        for (const auto& p : t.pieces()) hit = hit || y == p.lo || y == p.hi;
      if (!hit) CHECK(a.word == b.word);
    }
  }
}

TEST_CASE("property: V partitions X and merge times are exact") {
  for (const auto& t : preset_zoo()) {
    VData v = compute_v(t);
    const auto& comps = t.domain().pieces();
    QBeta total(t.field());
    for (size_t i = 0; i < v.J.size(); ++i) {
      CHECK(v.J[i].lo == v.points[i]);
      CHECK(v.J[i].lo < v.J[i].hi);
      total = total + (v.J[i].hi - v.J[i].lo);
      CHECK(v.index_of(v.points[i]) == int(i));
    }
    CHECK(total == t.domain().measure(t.field()));
    CHECK(v.points.front() == comps.front().lo);
    CHECK(v.J.back().hi == comps.back().hi);
    BetaTransform rt = t.side() == Side::Right ? t : t.twin(), lt = rt.twin();
    for (const auto& d : v.disc) {
      if (d.m == 0) continue;
      QBeta u = d.x, w = d.x;
      for (int k = 1; k <= d.m; ++k) {
        u = step(rt, u).image;
        w = step(lt, w).image;
        if (k < d.m) CHECK_FALSE(u == w);
      }
      CHECK(u == w);
    }
  }
}

TEST_CASE("property: the density is a fixed vector of the transfer matrix") {
  for (const auto& t : preset_zoo()) {
    VData v = compute_v(t);
    Density d = invariant_density(t, v);
    if (!d.exact) continue;
    QBeta beta = QBeta::beta(t.field());
    for (size_t i = 0; i < d.h.size(); ++i) {
      QBeta s(t.field());
      for (size_t j = 0; j < d.h.size(); ++j) s = s + d.h[j].scaled(mpq_class(d.B[i][j]));
      CHECK(s == beta * d.h[i]);
    }
    double mass = 0;
    for (size_t i = 0; i < d.h.size(); ++i) mass += d.h_approx[i] * (v.J[i].hi - v.J[i].lo).approx();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}
