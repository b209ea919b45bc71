#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "patrelax/cutting_plane.hpp"
#include "patrelax/oracle.hpp"

using namespace patrelax;

namespace {

SparsePolynomial random_poly(std::mt19937_64& rng, std::size_t n, int max_deg, int terms) {
  SparsePolynomial f(n);
  for (int t = 0; t < terms; ++t) {
    ExponentVector alpha(n);
    int budget = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_deg));
    for (std::size_t i = 0; i < n && budget > 0; ++i) {
      const int e = i + 1 == n ? budget : static_cast<int>(rng() % static_cast<unsigned>(budget + 1));
      alpha.set(i, e);
      budget -= e;
    }
    f.add_term(alpha, 2.0 * unit_uniform(rng) - 1.0);
  }
  return f;
}

PatternFamily family_of(std::initializer_list<Pattern> patterns) {
  PatternFamily family;
  for (const auto& p : patterns) family.add_pattern(p);
  return family;
}

SeparationConfig tolerance_covering(double eps) {
  SeparationConfig s;
  s.covering.kind = CoveringSpec::Kind::kTolerance;
  s.covering.tolerance = eps;
  return s;
}

}  // namespace

TEST_CASE("initial_master vertex rule") {
  SparsePolynomial f(2);
  f.add_term({1, 0}, 1.0);
  f.add_term({1, 1}, -2.0);
  const std::vector<ExponentVector> abar{{1, 0}, {1, 1}};
  const auto v = initial_master(f, abar, BoxDomain::unit(2));
  CHECK(v.values() == std::vector<double>{0.0, 1.0});
  CHECK(singleton_bound(f, BoxDomain::unit(2)) == -2.0);

  SparsePolynomial g(1);
  g.add_term({1}, 2.0);
  g.add_term({2}, -3.0);
  const std::vector<ExponentVector> abar1{{0}, {1}, {2}};
  CHECK(initial_master(g, abar1, BoxDomain::unit(1)).values() == std::vector<double>{1.0, 0.0, 1.0});
  CHECK(singleton_bound(g, BoxDomain::unit(1)) == -3.0);

  CHECK(singleton_bound(SparsePolynomial(2), BoxDomain::unit(2)) == 0.0);
}

TEST_CASE("zero objective") {
  RelaxationInstance inst{SparsePolynomial(2), family_of({ml_pattern({1, 1})}), BoxDomain::unit(2)};
  const auto r = solve_relaxation(inst);
  CHECK(r.lower_bound == 0.0);
  CHECK(r.termination == Termination::kConverged);
}

TEST_CASE("lift_cut") {
  Cut cut;
  cut.coeffs = {{{0, 0}, 0.5}, {{1, 1}, -1.0}};
  cut.offset = -0.2;
  const std::vector<ExponentVector> abar{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}};
  CHECK(lift_cut(cut, abar) == std::vector<double>{0.5, 0.0, 0.0, -1.0, 0.0});
  CHECK(cut.offset == -0.2);
  const std::vector<ExponentVector> own{{0, 0}, {1, 1}};
  CHECK(lift_cut(cut, own) == std::vector<double>{0.5, -1.0});
  const std::vector<ExponentVector> missing{{0, 0}, {1, 0}};
  CHECK_THROWS_AS(lift_cut(cut, missing), std::logic_error);
}

TEST_CASE("univariate chain bound") {
  SparsePolynomial f(1);
  f.add_term({2}, 1.0);
  f.add_term({1}, -1.0);
  RelaxationInstance inst{f, family_of({chain_pattern({1}, 2)}), BoxDomain::unit(1), 1e-4,
                          tolerance_covering(1e-4)};
  const auto r = solve_relaxation(inst);
  CHECK(r.termination == Termination::kConverged);
  CHECK(r.lower_bound >= -0.2501);
  CHECK(r.lower_bound <= -0.25);
}

TEST_CASE("bilinear term is exact") {
  SparsePolynomial f(2);
  f.add_term({1, 1}, 1.0);
  RelaxationInstance inst{f, family_of({ml_pattern({1, 1})}), BoxDomain::unit(2)};
  const auto r = solve_relaxation(inst);
  CHECK(std::abs(r.lower_bound) <= 1e-8);
  CHECK(r.iterations <= 3);
}

TEST_CASE("single chain covering the support is tight") {
  std::mt19937_64 rng(11);
  const auto box = BoxDomain::unit(2);
  for (int rep = 0; rep < 3; ++rep) {
    SparsePolynomial f(2);
    for (int k = 1; k <= 5; ++k) f.add_term({k, k}, 2.0 * unit_uniform(rng) - 1.0);
    RelaxationInstance inst{f, family_of({chain_pattern({1, 1}, 5)}), box, 1e-4,
                            tolerance_covering(1e-4)};
    const auto r = solve_relaxation(inst);
    const double ref = grid_min(f, box).value;
    CHECK(std::abs(r.lower_bound - ref) <= 1e-3);
  }
}

TEST_CASE("random instances: soundness, monotonicity, exit feasibility") {
  std::mt19937_64 rng(2024);
  const auto types = default_type_order();
  std::size_t total_cuts = 0;
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t n = 1 + rep % 2;
    const auto f = random_poly(rng, n, 6, 4);
    const auto gen = generate_patterns(f.support(), types);
    const BoxDomain box(std::vector<double>(n, -0.5), std::vector<double>(n, 1.0));
    RelaxationInstance inst{f, gen.family, box};
    const auto r = solve_relaxation(inst);
    total_cuts += r.cuts_added;
    CAPTURE(rep);
    CHECK(r.termination == Termination::kConverged);
    CHECK(r.lower_bound <= grid_min(f, box).value + 1e-6);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].bound >= r.trace[i - 1].bound - 1e-9);
    }
    const ExponentVector zero(n);
    if (r.point.contains(zero)) CHECK(r.point.value(zero) == doctest::Approx(1.0));
    for (const auto& p : inst.family.patterns()) {
      const auto cut = separate(p, r.point, box, inst.separation);
      if (cut) CHECK(cut->distance <= inst.epsilon + 1e-9);
    }
  }
  CHECK(total_cuts > 0);
}

TEST_CASE("more patterns never weaken the bound") {
  std::mt19937_64 rng(77);
  const auto box = BoxDomain::unit(2);
  for (int rep = 0; rep < 8; ++rep) {
    const auto f = random_poly(rng, 2, 5, 5);
    const auto ml = generate_patterns(f.support(), std::vector{PatternType::kMultilinear});
    const auto ch = generate_patterns(f.support(), std::vector{PatternType::kChain});
    PatternFamily both = ml.family;
    for (const auto& p : ch.family.patterns()) both.add_pattern(p);
    const double b1 = solve_relaxation({f, ml.family, box}).lower_bound;
    const double b2 = solve_relaxation({f, ch.family, box}).lower_bound;
    const double b12 = solve_relaxation({f, both, box}).lower_bound;
    CAPTURE(rep);
    CHECK(b12 >= b1 - 1e-9);
    CHECK(b12 >= b2 - 1e-9);
  }
}

TEST_CASE("iteration cap still reports a valid bound") {
  SparsePolynomial f(1);
  f.add_term({2}, 1.0);
  f.add_term({1}, -1.0);
  SolveOptions opts;
  opts.iteration_cap = 1;
  RelaxationInstance inst{f, family_of({chain_pattern({1}, 2)}), BoxDomain::unit(1), 1e-4,
                          tolerance_covering(1e-4)};
  const auto r = solve_relaxation(inst, opts);
  CHECK(r.termination == Termination::kIterationCap);
  CHECK(r.lower_bound <= -0.25);
  CHECK(termination_name(r.termination) == "iteration_cap");
}

TEST_CASE("input validation") {
  SparsePolynomial f(2);
  f.add_term({1, 1}, 1.0);
  CHECK_THROWS_AS(solve_relaxation({f, family_of({ml_pattern({1, 1})}), BoxDomain::unit(3)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_relaxation({f, family_of({ml_pattern({1, 1})}), BoxDomain::unit(2), 0.0}),
                  std::invalid_argument);
}
