#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "patrelax/bench.hpp"

using namespace patrelax;

namespace {

ExperimentConfig small_config(const std::string& set, std::initializer_list<const char*> combos,
                              std::size_t samples) {
  ExperimentConfig cfg;
  cfg.set = named_set(set);
  for (const char* c : combos) cfg.combinations.push_back(Combination::parse(c));
  cfg.samples = samples;
  cfg.seed = 5;
  cfg.oracle.grid_points = 101;
  cfg.oracle.restarts = 4;
  return cfg;
}

}  // namespace

TEST_CASE("named sets") {
  CHECK(named_set("intro").exponents.size() == 6);
  CHECK(named_set("A2-like").exponents == ExponentSet{{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}});
  CHECK(named_set("A5-like").exponents.size() == 9);
  CHECK(named_set("A5-like").reconstruction);
  CHECK_FALSE(named_set("intro").reconstruction);
  CHECK(named_set("dense:2:3").exponents.size() == 10);
  CHECK(named_set("dense:3:7").exponents.size() == 120);
  CHECK_THROWS_AS(named_set("dense:3:9"), std::invalid_argument);
  CHECK(named_set("dense:3:8", true).exponents.size() == 165);
  CHECK_THROWS_AS(named_set("A9"), std::invalid_argument);
  CHECK_THROWS_AS(named_set("dense:2:x"), std::invalid_argument);

  const auto r1 = named_set("random:2:6:8:3");
  const auto r2 = named_set("random:2:6:8:3");
  CHECK(r1.exponents == r2.exponents);
  CHECK(r1.exponents.size() == 8);
  for (const auto& a : r1.exponents) {
    CHECK_FALSE(a.is_zero());
    CHECK(a.degree() <= 6);
  }
  CHECK(named_set("random:2:6:8:4").exponents != r1.exponents);
  CHECK_THROWS_AS(random_sparse_set(2, 2, 6, 0), std::invalid_argument);
}

TEST_CASE("sample_coefficients") {
  const ExponentSet a{{1, 0}, {0, 1}, {1, 1}};
  CHECK(sample_coefficients(a, 1, 0).empty());
  const auto s = sample_coefficients(a, 9, 50);
  REQUIRE(s.size() == 50);
  for (const auto& v : s) {
    CHECK(v.size() == 3);
    for (double x : v) CHECK((x >= -1.0 && x < 1.0));
  }
  CHECK(sample_coefficients(a, 9, 50) == s);
  CHECK(sample_coefficients(a, 10, 50) != s);
  // The first batch does not depend on the batch size.
  CHECK(sample_coefficients(a, 9, 5)[4] == s[4]);
  CHECK_THROWS_AS(sample_coefficients({}, 1, 1), std::invalid_argument);
}

TEST_CASE("combination labels") {
  CHECK(Combination::parse("single").types.empty());
  CHECK(Combination::parse("ML+AC+CH+SC").label() == "ML+AC+CH+SC");
  CHECK(Combination::parse("SC+ML").types == std::vector{PatternType::kShiftedChain, PatternType::kMultilinear});
  CHECK_THROWS_AS(Combination::parse("ML+ML"), std::invalid_argument);
  CHECK_THROWS_AS(Combination::parse("XX"), std::invalid_argument);
  CHECK(slug("ML+AC") == "ML_AC");
}

TEST_CASE("width_bound examples") {
  const auto box = BoxDomain::unit(2);
  SparsePolynomial lin(2);
  lin.add_term({1, 0}, 2.0);
  lin.add_term({0, 1}, -3.0);
  lin.add_term({0, 0}, 0.5);
  const auto w = width_bound(singleton_family(lin.support()), lin, box);
  CHECK(w.width == doctest::Approx(5.0));
  CHECK(w.lower == doctest::Approx(-2.5));
  CHECK(w.upper == doctest::Approx(2.5));

  SparsePolynomial bil(2);
  bil.add_term({1, 1}, 1.0);
  PatternFamily ml;
  ml.add_pattern(ml_pattern({1, 1}));
  CHECK(std::abs(width_bound(ml, bil, box).width - 1.0) <= 1e-8);

  SparsePolynomial f(2);
  f.add_term({2, 1}, 0.7);
  f.add_term({1, 3}, -0.4);
  f.add_term({0, 2}, 0.1);
  CHECK(width_bound(singleton_family(f.support()), f, box).width == singleton_width(f, box));
}

TEST_CASE("nu examples") {
  const auto box = BoxDomain::unit(2);
  SparsePolynomial f(2);
  f.add_term({2, 1}, 0.7);
  f.add_term({1, 3}, -0.4);
  CHECK(nu(singleton_family(f.support()), f, box) == 1.0);

  SparsePolynomial c(2);
  c.add_term({0, 0}, 3.0);
  CHECK_THROWS_AS(nu(singleton_family(c.support()), c, box), DegenerateInstance);

  const auto a2 = named_set("A2-like").exponents;
  const auto ml = Combination::parse("ML").family_for(a2);
  const auto ch = Combination::parse("CH").family_for(a2);
  RelaxationSettings tight;
  tight.separation.covering = CoveringSpec::parse("tol:1e-4");
  for (const auto& coeffs : sample_coefficients(a2, 4, 5)) {
    const auto g = polynomial_from(a2, coeffs, 2);
    CHECK(std::abs(nu(ml, g, box) - 1.0) <= 1e-9);
    const double ref = width_ref(g, box) / singleton_width(g, box);
    CHECK(std::abs(nu(ch, g, box, tight) - ref) <= 1e-2);
  }
}

TEST_CASE("boxplot_stats") {
  const auto ones = boxplot_stats({1, 1, 1, 1});
  CHECK(ones.q1 == 1.0);
  CHECK(ones.median == 1.0);
  CHECK(ones.q3 == 1.0);
  CHECK(ones.lower_whisker == 1.0);
  CHECK(ones.upper_whisker == 1.0);
  CHECK(ones.outliers.empty());

  std::vector<double> ramp;
  for (int i = 100; i >= 0; --i) ramp.push_back(i);
  const auto r = boxplot_stats(ramp);
  CHECK(r.q1 == 25.0);
  CHECK(r.median == 50.0);
  CHECK(r.q3 == 75.0);
  CHECK(r.lower_whisker == 0.0);
  CHECK(r.upper_whisker == 100.0);

  const auto one = boxplot_stats({0.3});
  CHECK(one.q1 == 0.3);
  CHECK(one.median == 0.3);
  CHECK(one.q3 == 0.3);

  // Whiskers stop at the last data point inside the fences.
  const auto skew = boxplot_stats({1, 2, 3, 4, 100});
  CHECK(skew.q1 == 2.0);
  CHECK(skew.q3 == 4.0);
  CHECK(skew.upper_whisker == 4.0);
  CHECK(skew.outliers == std::vector<double>{100.0});

  const std::vector<double> sorted{1, 2, 3, 4};
  CHECK(quantile(sorted, 0.25) == 1.75);
  CHECK(quantile(sorted, 0.5) == 2.5);
  CHECK_THROWS_AS(boxplot_stats({}), std::invalid_argument);
}

TEST_CASE("singleton experiment gives nu = 1") {
  const auto res = run_experiment(small_config("intro", {"single"}, 5));
  REQUIRE(res.records.size() == 5);
  for (const auto& r : res.records) {
    CHECK(r.error.empty());
    CHECK(r.nu == 1.0);
    CHECK(r.nu_ref <= 1.0 + 1e-12);
    CHECK(r.iterations_max == 0);
  }
  REQUIRE(res.summaries.size() == 1);
  CHECK(res.summaries[0].nu->median == 1.0);
}

TEST_CASE("experiment properties") {
  const auto res = run_experiment(small_config("A5-like", {"ML", "SC", "ML+AC+CH+SC"}, 6));
  CHECK(res.failures() == 0);
  for (const auto& r : res.records) {
    CHECK(r.nu <= 1.0 + 1e-6);
    // Relaxation widths over-estimate, the oracle under-estimates.
    CHECK(r.nu >= r.nu_ref - 1e-6);
  }
}

TEST_CASE("experiment output is independent of the worker count") {
  auto cfg = small_config("intro", {"ML", "CH+SC"}, 6);
  const std::string serial = results_csv(run_experiment(cfg));
  cfg.jobs = 3;
  CHECK(results_csv(run_experiment(cfg)) == serial);
}

TEST_CASE("dense sets give the same nu for every type order") {
  auto cfg = small_config("dense:2:3", {"ML+AC+CH+SC", "SC+CH+AC+ML", "CH+ML+SC+AC"}, 4);
  const auto res = run_experiment(cfg);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    CHECK(res.records[3 * i].nu == res.records[3 * i + 1].nu);
    CHECK(res.records[3 * i].nu == res.records[3 * i + 2].nu);
  }
}

TEST_CASE("failures are recorded per instance") {
  ExperimentConfig cfg;
  cfg.set.name = "wide";
  cfg.set.dimension = 5;
  cfg.set.exponents = {{1, 0, 0, 0, 0}, {0, 1, 1, 0, 0}};
  cfg.combinations = {Combination::parse("ML")};
  cfg.samples = 2;
  const auto res = run_experiment(cfg);
  CHECK(res.failures() == 2);
  for (const auto& r : res.records) {
    CHECK(std::isnan(r.nu_ref));
    CHECK_FALSE(std::isnan(r.nu));
    CHECK(r.error.find("reference") == 0);
  }
}

TEST_CASE("csv and svg output") {
  auto cfg = small_config("A2-like", {"single", "CH"}, 3);
  const auto res = run_experiment(cfg);
  const std::string csv = results_csv(res);
  CHECK(csv.rfind("instance_id,set_name,combination,nu,nu_ref,iterations_min,iterations_max,cuts,wall_ms\n", 0) == 0);
  CHECK(csv.find("0,A2-like,single,1,") != std::string::npos);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 7);
  // wall_ms stays empty unless timing is requested.
  CHECK(csv.find(",\n") != std::string::npos);
  const std::string svg = boxplot_svg(res.summaries[1]);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("CH") != std::string::npos);
}

TEST_CASE("config validation") {
  auto cfg = small_config("intro", {"ML"}, 1);
  cfg.samples = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.samples = 1;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.epsilon = 1e-4;
  cfg.box = BoxDomain::unit(3);
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
