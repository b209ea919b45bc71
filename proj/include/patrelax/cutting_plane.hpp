#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "patrelax/pattern.hpp"
#include "patrelax/poly.hpp"
#include "patrelax/separation.hpp"

namespace patrelax {

struct RelaxationInstance {
  SparsePolynomial f;
  PatternFamily family;
  BoxDomain box;
  double epsilon = 1e-4;
  SeparationConfig separation;
};

struct SolveOptions {
  std::size_t iteration_cap = 10000;
  /// Wall-clock budget in seconds; 0 disables it.
  double time_budget = 0.0;
};

enum class Termination { kConverged, kIterationCap, kTimeBudget };
std::string_view termination_name(Termination t);

struct TraceEntry {
  std::size_t iteration = 0;
  double bound = 0.0;
  /// Largest separation distance found at this iteration's point.
  double max_distance = 0.0;
  std::size_t cuts = 0;
};

struct SolveReport {
  double lower_bound = 0.0;
  MomentPoint point;
  std::size_t iterations = 0;
  std::size_t cuts_added = 0;
  std::vector<TraceEntry> trace;
  Termination termination = Termination::kConverged;
};

/// Moment index set of an instance: the family cover together with supp(f).
std::vector<ExponentVector> relaxation_index(const SparsePolynomial& f, const PatternFamily& family);

/// Box relaxation solved in closed form: v_alpha is x^alpha_min when
/// f_alpha >= 0 and x^alpha_max otherwise.
MomentPoint initial_master(const SparsePolynomial& f, std::span<const ExponentVector> abar,
                           const BoxDomain& box);

/// min f over the singleton relaxation, sum_alpha min(f_alpha lo, f_alpha hi).
double singleton_bound(const SparsePolynomial& f, const BoxDomain& box);

/// Dense coefficients of `cut` over `abar` (sorted), zero outside the pattern.
std::vector<double> lift_cut(const Cut& cut, std::span<const ExponentVector> abar);

/// Cutting-plane loop: separate every pattern at the current point, add all
/// cuts with distance above epsilon, re-solve the master LP, repeat.
SolveReport solve_relaxation(const RelaxationInstance& instance, const SolveOptions& options = {});

}  // namespace patrelax
