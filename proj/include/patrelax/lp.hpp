#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace patrelax::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

/// Dense linear program
///   min/max  c'x  s.t.  a_i'x (<=,>=,=) b_i,  l <= x <= u.
/// Rows are stored contiguously, so programs with very many short rows stay
/// cheap to build.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars, Sense sense = Sense::kMinimize);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_rows() const { return rhs_.size(); }
  Sense sense() const { return sense_; }

  void set_objective(std::span<const double> c);
  void set_objective_coeff(std::size_t j, double c) { objective_.at(j) = c; }
  /// Bounds may be infinite; lower <= upper is required.
  void set_bounds(std::size_t j, double lower, double upper);
  void add_row(std::span<const double> coeffs, Relation rel, double rhs);

  const std::vector<double>& objective() const { return objective_; }
  double lower(std::size_t j) const { return lower_[j]; }
  double upper(std::size_t j) const { return upper_[j]; }
  std::span<const double> row(std::size_t i) const {
    return {coeffs_.data() + i * num_vars_, num_vars_};
  }
  Relation relation(std::size_t i) const { return relations_[i]; }
  double rhs(std::size_t i) const { return rhs_[i]; }

 private:
  std::size_t num_vars_;
  Sense sense_;
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> coeffs_;
  std::vector<Relation> relations_;
  std::vector<double> rhs_;
};

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;   // populated when optimal
  /// Row duals when optimal: derivative of the objective with respect to
  /// each right-hand side. Rows left out by row generation get 0.
  std::vector<double> duals;
  double objective = 0.0;  // in the program's own sense
  std::size_t iterations = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::size_t max_iterations = 200000;
  /// Programs with many more rows than columns and finite variable bounds
  /// are solved by adding violated rows to a growing working set.
  bool row_generation = true;
};

/// Numerical failure inside the simplex method.
class LpError : public std::runtime_error {
 public:
  LpError(const std::string& what, std::size_t rows, std::size_t cols, std::size_t iterations)
      : std::runtime_error(what + " (rows=" + std::to_string(rows) + ", cols=" +
                           std::to_string(cols) + ", iterations=" + std::to_string(iterations) +
                           ")") {}
};

/// Bounded-variable primal simplex on a dense tableau: crash basis from
/// slacks, phase I over artificials, Dantzig pricing with a Bland fallback
/// after a run of degenerate pivots. Deterministic for identical input.
LpOutcome solve_lp(const LinearProgram& lp, const LpOptions& options = {});

/// CPLEX-style LP text, for cross-checking with external solvers.
std::string to_lp_format(const LinearProgram& lp);

}  // namespace patrelax::lp
