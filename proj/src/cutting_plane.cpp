#include "patrelax/cutting_plane.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "patrelax/lp.hpp"

namespace patrelax {

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kIterationCap: return "iteration_cap";
    case Termination::kTimeBudget: return "time_budget";
  }
  return "unknown";
}

std::vector<ExponentVector> relaxation_index(const SparsePolynomial& f,
                                             const PatternFamily& family) {
  ExponentSet all = family.cover();
  for (const auto& [alpha, c] : f.terms()) all.insert(alpha);
  return {all.begin(), all.end()};
}

MomentPoint initial_master(const SparsePolynomial& f, std::span<const ExponentVector> abar,
                           const BoxDomain& box) {
  std::vector<double> vals;
  vals.reserve(abar.size());
  for (const auto& alpha : abar) {
    const Interval r = monomial_bounds(alpha, box);
    vals.push_back(f.coefficient(alpha) >= 0.0 ? r.lo : r.hi);
  }
  return MomentPoint({abar.begin(), abar.end()}, std::move(vals));
}

double singleton_bound(const SparsePolynomial& f, const BoxDomain& box) {
  double s = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    const Interval r = monomial_bounds(alpha, box);
    s += c >= 0.0 ? c * r.lo : c * r.hi;
  }
  return s;
}

std::vector<double> lift_cut(const Cut& cut, std::span<const ExponentVector> abar) {
  std::vector<double> row(abar.size(), 0.0);
  for (const auto& [alpha, c] : cut.coeffs) {
    const auto it = std::lower_bound(abar.begin(), abar.end(), alpha);
    if (it == abar.end() || *it != alpha) {
      throw std::logic_error("cut element " + alpha.to_string() + " outside the moment index");
    }
    row[static_cast<std::size_t>(it - abar.begin())] = c;
  }
  return row;
}

namespace {

double objective_value(const SparsePolynomial& f, const MomentPoint& v) {
  double s = 0.0;
  for (const auto& [alpha, c] : f.terms()) s += c * v.value(alpha);
  return s;
}

}  // namespace

SolveReport solve_relaxation(const RelaxationInstance& instance, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto& f = instance.f;
  const auto& box = instance.box;
  if (f.dimension() != box.dimension()) throw std::invalid_argument("dimension mismatch");
  if (!(instance.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const std::vector<ExponentVector> abar = relaxation_index(f, instance.family);
  if (abar.empty()) {
    SolveReport empty;
    return empty;
  }

  // Patterns are visited in element order, so families that differ only in
  // enumeration order produce the same master problem.
  const auto& patterns = instance.family.patterns();
  std::vector<std::size_t> order(patterns.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return patterns[a].elements() < patterns[b].elements();
  });
  std::vector<PatternSeparator> separators;
  separators.reserve(patterns.size());
  for (std::size_t k : order) separators.emplace_back(patterns[k], box, instance.separation);

  lp::LinearProgram master(abar.size(), lp::Sense::kMinimize);
  std::vector<double> obj(abar.size(), 0.0);
  for (std::size_t j = 0; j < abar.size(); ++j) {
    obj[j] = f.coefficient(abar[j]);
    const Interval r = monomial_bounds(abar[j], box);
    master.set_bounds(j, r.lo, r.hi);
  }
  master.set_objective(obj);

  SolveReport report;
  report.point = initial_master(f, abar, box);
  report.lower_bound = objective_value(f, report.point);
  report.termination = Termination::kConverged;

  for (std::size_t iteration = 0;; ++iteration) {
    std::vector<Cut> cuts;
    double max_distance = 0.0;
    for (std::size_t k = 0; k < separators.size(); ++k) {
      auto cut = separators[k].separate(report.point);
      if (!cut) continue;
      max_distance = std::max(max_distance, cut->distance);
      if (cut->distance > instance.epsilon) {
        cut->pattern_index = order[k];
        cuts.push_back(std::move(*cut));
      }
    }
    report.trace.push_back({iteration, report.lower_bound, max_distance, cuts.size()});
    if (cuts.empty()) break;
    if (iteration >= options.iteration_cap) {
      report.termination = Termination::kIterationCap;
      break;
    }
    if (options.time_budget > 0.0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > options.time_budget) {
        report.termination = Termination::kTimeBudget;
        break;
      }
    }
    for (const auto& cut : cuts) {
      master.add_row(lift_cut(cut, abar), lp::Relation::kGreaterEqual, cut.offset);
    }
    report.cuts_added += cuts.size();

    const auto out = lp::solve_lp(master);
    if (out.status != lp::LpStatus::kOptimal) {
      throw std::logic_error("master problem became infeasible; a cut is invalid");
    }
    report.point = MomentPoint(abar, out.x);
    report.lower_bound = out.objective;
    report.iterations = iteration + 1;
  }
  return report;
}

}  // namespace patrelax
