#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>
#include <random>

#include "patrelax/lp.hpp"

using namespace patrelax::lp;

namespace {

// Solves the square system M y = r by Gaussian elimination with partial
// pivoting; returns nothing when M is (numerically) singular.
std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m,
                                                std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
    }
    if (std::abs(m[p][c]) < 1e-10) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(r[p], r[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const double f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
      r[i] -= f * r[c];
    }
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = r[i] / m[i][i];
  return y;
}

bool feasible(const LinearProgram& lp, const std::vector<double>& x, double tol) {
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (x[j] < lp.lower(j) - tol || x[j] > lp.upper(j) + tol) return false;
  }
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) ax += lp.row(i)[j] * x[j];
    const double b = lp.rhs(i);
    switch (lp.relation(i)) {
      case Relation::kLessEqual: if (ax > b + tol) return false; break;
      case Relation::kGreaterEqual: if (ax < b - tol) return false; break;
      case Relation::kEqual: if (std::abs(ax - b) > tol) return false; break;
    }
  }
  return true;
}

// Optimal value over all basic solutions of a program with finite bounds.
std::optional<double> vertex_enumeration(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<std::vector<double>> hyper;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    hyper.emplace_back(lp.row(i).begin(), lp.row(i).end());
    rhs.push_back(lp.rhs(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    hyper.push_back(e);
    rhs.push_back(lp.lower(j));
    hyper.push_back(e);
    rhs.push_back(lp.upper(j));
  }
  const std::size_t h = hyper.size();
  std::optional<double> best;
  std::vector<std::size_t> pick(n);
  for (std::size_t k = 0; k < n; ++k) pick[k] = k;
  while (true) {
    std::vector<std::vector<double>> m;
    std::vector<double> r;
    for (std::size_t k : pick) {
      m.push_back(hyper[k]);
      r.push_back(rhs[k]);
    }
    if (auto x = solve_square(m, r); x && feasible(lp, *x, 1e-9)) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += lp.objective()[j] * (*x)[j];
      if (!best || (lp.sense() == Sense::kMinimize ? v < *best : v > *best)) best = v;
    }
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == h - n + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t q = k; q < n; ++q) pick[q] = pick[q - 1] + 1;
  }
  return best;
}

LinearProgram random_lp(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> rel(0, 5);
  LinearProgram lp(n, rel(rng) % 2 ? Sense::kMaximize : Sense::kMinimize);
  std::vector<double> c(n);
  for (auto& v : c) v = u(rng);
  lp.set_objective(c);
  for (std::size_t j = 0; j < n; ++j) lp.set_bounds(j, -1.0 - u(rng) * 0.5, 1.0 + u(rng) * 0.5);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> a(n);
    for (auto& v : a) v = u(rng);
    const int r = rel(rng);
    const Relation relation = r < 3 ? Relation::kLessEqual
                              : r < 5 ? Relation::kGreaterEqual
                                      : Relation::kEqual;
    lp.add_row(a, relation, u(rng) * 0.8);
  }
  return lp;
}

}  // namespace

TEST_CASE("binding constraint") {
  LinearProgram lp(1, Sense::kMaximize);
  lp.set_bounds(0, -kInf, kInf);
  const double c[] = {1.0};
  lp.set_objective(c);
  lp.add_row(c, Relation::kLessEqual, 3.0);
  lp.add_row(c, Relation::kLessEqual, 5.0);
  const auto out = solve_lp(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.x[0] == doctest::Approx(3.0));
  CHECK(out.objective == doctest::Approx(3.0));
}

TEST_CASE("empty feasible set") {
  LinearProgram lp(1);
  lp.set_bounds(0, -kInf, kInf);
  const double c[] = {1.0};
  lp.set_objective(c);
  lp.add_row(c, Relation::kGreaterEqual, 1.0);
  lp.add_row(c, Relation::kLessEqual, 0.0);
  CHECK(solve_lp(lp).status == LpStatus::kInfeasible);
}

TEST_CASE("box vertex") {
  LinearProgram lp(2, Sense::kMaximize);
  const double c[] = {1.0, 1.0};
  lp.set_objective(c);
  lp.set_bounds(0, 0.0, 1.0);
  lp.set_bounds(1, 0.0, 1.0);
  lp.add_row(c, Relation::kLessEqual, 1.0);
  const auto out = solve_lp(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.objective == doctest::Approx(1.0));
}

TEST_CASE("unbounded") {
  LinearProgram lp(2);
  const double c[] = {-1.0, 0.0};
  lp.set_objective(c);
  const double a[] = {1.0, -1.0};
  lp.add_row(a, Relation::kLessEqual, 1.0);
  CHECK(solve_lp(lp).status == LpStatus::kUnbounded);
}

TEST_CASE("free variables and equality rows") {
  // min |x - 2| + |y + 1| via split variables is replaced by a direct form:
  // min s + t  s.t.  s >= x - 2, s >= 2 - x, t >= y + 1, t >= -y - 1, x + y = 3.
  LinearProgram lp(4);
  for (std::size_t j = 0; j < 4; ++j) lp.set_bounds(j, -kInf, kInf);
  const double c[] = {0, 0, 1, 1};
  lp.set_objective(c);
  const double r1[] = {-1, 0, 1, 0};
  const double r2[] = {1, 0, 1, 0};
  const double r3[] = {0, -1, 0, 1};
  const double r4[] = {0, 1, 0, 1};
  const double r5[] = {1, 1, 0, 0};
  lp.add_row(r1, Relation::kGreaterEqual, -2);
  lp.add_row(r2, Relation::kGreaterEqual, 2);
  lp.add_row(r3, Relation::kGreaterEqual, 1);
  lp.add_row(r4, Relation::kGreaterEqual, -1);
  lp.add_row(r5, Relation::kEqual, 3);
  const auto out = solve_lp(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.objective == doctest::Approx(2.0));
}

TEST_CASE("random programs agree with vertex enumeration") {
  std::mt19937_64 rng(1234);
  int optimal = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rep % 4;
    const std::size_t m = 1 + (rep / 4) % 6;
    const auto lp = random_lp(rng, n, m);
    const auto oracle = vertex_enumeration(lp);
    const auto out = solve_lp(lp);
    if (!oracle) {
      CHECK(out.status == LpStatus::kInfeasible);
      continue;
    }
    REQUIRE(out.status == LpStatus::kOptimal);
    ++optimal;
    CHECK(out.objective == doctest::Approx(*oracle).epsilon(1e-8));
    CHECK(feasible(lp, out.x, 1e-7));
  }
  CHECK(optimal > 100);
}

TEST_CASE("weak duality on random max programs") {
  // max c'x s.t. Ax <= b, 0 <= x <= 1. Any y >= 0, z >= 0 with A'y + z >= c
  // gives the dual bound b'y + 1'z.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rep % 5;
    const std::size_t m = 1 + rep % 4;
    LinearProgram lp(n, Sense::kMaximize);
    std::vector<double> c(n);
    for (auto& v : c) v = u(rng);
    lp.set_objective(c);
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (auto& v : a[i]) v = u(rng);
      b[i] = 0.5 + std::abs(u(rng));
      lp.add_row(a[i], Relation::kLessEqual, b[i]);
    }
    for (std::size_t j = 0; j < n; ++j) lp.set_bounds(j, 0.0, 1.0);
    const auto out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::kOptimal);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> y(m);
      for (auto& v : y) v = std::abs(u(rng));
      double bound = 0.0;
      for (std::size_t i = 0; i < m; ++i) bound += b[i] * y[i];
      for (std::size_t j = 0; j < n; ++j) {
        double aty = 0.0;
        for (std::size_t i = 0; i < m; ++i) aty += a[i][j] * y[i];
        bound += std::max(0.0, c[j] - aty);
      }
      CHECK(out.objective <= bound + 1e-9);
    }
  }
}

TEST_CASE("row generation matches the direct solve") {
  std::mt19937_64 rng(4321);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 3 + rep % 4;
    LinearProgram lp(n, Sense::kMinimize);
    std::vector<double> c(n);
    for (auto& v : c) v = u(rng);
    lp.set_objective(c);
    for (std::size_t j = 0; j < n; ++j) lp.set_bounds(j, -2.0, 2.0);
    // Many cuts tangent to a sphere: a'x >= -1 with |a| = 1.
    for (int i = 0; i < 400; ++i) {
      std::vector<double> a(n);
      double norm = 0.0;
      for (auto& v : a) {
        v = u(rng);
        norm += v * v;
      }
      for (auto& v : a) v /= std::sqrt(norm);
      lp.add_row(a, Relation::kGreaterEqual, -1.0);
    }
    LpOptions direct;
    direct.row_generation = false;
    const auto full = solve_lp(lp, direct);
    const auto gen = solve_lp(lp);
    REQUIRE(full.status == LpStatus::kOptimal);
    REQUIRE(gen.status == LpStatus::kOptimal);
    CHECK(gen.objective == doctest::Approx(full.objective).epsilon(1e-9));
    CHECK(feasible(lp, gen.x, 1e-8));
  }
}

TEST_CASE("degenerate program terminates") {
  // Many redundant rows through the same vertex.
  LinearProgram lp(3, Sense::kMaximize);
  const double c[] = {1.0, 1.0, 1.0};
  lp.set_objective(c);
  for (std::size_t j = 0; j < 3; ++j) lp.set_bounds(j, 0.0, kInf);
  for (int k = 1; k <= 30; ++k) {
    const double a[] = {1.0, static_cast<double>(k % 3), static_cast<double>(k % 5)};
    lp.add_row(a, Relation::kLessEqual, 0.0);
  }
  const double box[] = {1.0, 1.0, 1.0};
  lp.add_row(box, Relation::kLessEqual, 1.0);
  const auto out = solve_lp(lp);
  REQUIRE(out.status == LpStatus::kOptimal);
  CHECK(out.objective == doctest::Approx(0.0));
}

TEST_CASE("deterministic re-solve") {
  std::mt19937_64 rng(77);
  const auto lp = random_lp(rng, 4, 6);
  const auto a = solve_lp(lp);
  const auto b = solve_lp(lp);
  CHECK(a.status == b.status);
  CHECK(a.x == b.x);
  CHECK(a.objective == b.objective);
}

TEST_CASE("lp text dump") {
  LinearProgram lp(2, Sense::kMaximize);
  const double c[] = {1.0, -2.0};
  lp.set_objective(c);
  lp.set_bounds(1, -kInf, kInf);
  lp.add_row(c, Relation::kLessEqual, 4.0);
  const std::string text = to_lp_format(lp);
  CHECK(text.find("Maximize") == 0);
  CHECK(text.find("obj: 1 x0 - 2 x1") != std::string::npos);
  CHECK(text.find("c0: 1 x0 - 2 x1 <= 4") != std::string::npos);
  CHECK(text.find("x1 free") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("input validation") {
  LinearProgram lp(2);
  const double bad[] = {1.0};
  CHECK_THROWS_AS(lp.add_row(bad, Relation::kLessEqual, 0.0), std::invalid_argument);
  const double row[] = {1.0, 1.0};
  CHECK_THROWS_AS(lp.add_row(row, Relation::kLessEqual, kInf), std::invalid_argument);
  CHECK_THROWS_AS(lp.set_bounds(0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("row duals match finite differences") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int rep = 0; rep < 200 && checked < 40; ++rep) {
    const std::size_t n = 3, m = 3;
    LinearProgram lp(n, rep % 2 ? Sense::kMaximize : Sense::kMinimize);
    std::vector<double> c(n);
    for (auto& v : c) v = u(rng);
    lp.set_objective(c);
    for (std::size_t j = 0; j < n; ++j) lp.set_bounds(j, -1.0, 1.0);
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    std::vector<double> b(m);
    std::vector<Relation> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (auto& v : rows[i]) v = u(rng);
      b[i] = 0.3 * u(rng);
      rel[i] = i == 0 ? Relation::kEqual : (i == 1 ? Relation::kLessEqual : Relation::kGreaterEqual);
      lp.add_row(rows[i], rel[i], b[i]);
    }
    const auto base = solve_lp(lp);
    if (base.status != LpStatus::kOptimal) continue;
    REQUIRE(base.duals.size() == m);
    bool ok = true;
    const double h = 1e-7;
    for (std::size_t i = 0; i < m && ok; ++i) {
      double vals[2];
      for (int s = 0; s < 2; ++s) {
        LinearProgram q(n, lp.sense());
        q.set_objective(c);
        for (std::size_t j = 0; j < n; ++j) q.set_bounds(j, -1.0, 1.0);
        for (std::size_t k = 0; k < m; ++k) {
          q.add_row(rows[k], rel[k], b[k] + (k == i ? (s ? h : -h) : 0.0));
        }
        const auto o = solve_lp(q);
        if (o.status != LpStatus::kOptimal) ok = false;
        vals[s] = o.objective;
      }
      if (!ok) break;
      const double fwd = (vals[1] - base.objective) / h;
      const double bwd = (base.objective - vals[0]) / h;
      // At a kink the dual is a subgradient between the one-sided slopes.
      CHECK(base.duals[i] >= std::min(fwd, bwd) - 1e-5);
      CHECK(base.duals[i] <= std::max(fwd, bwd) + 1e-5);
    }
    if (ok) ++checked;
  }
  CHECK(checked >= 20);
}
