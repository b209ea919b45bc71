#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "patrelax/cutting_plane.hpp"
#include "patrelax/oracle.hpp"
#include "patrelax/pattern.hpp"
#include "patrelax/poly.hpp"

namespace patrelax {

struct NamedSet {
  std::string name;
  std::size_t dimension = 0;
  ExponentSet exponents;
  /// True for sets rebuilt from a prose description rather than listed exactly.
  bool reconstruction = false;
};

/// {alpha in N^n : |alpha|_1 <= d}, including the zero exponent.
ExponentSet dense_set(std::size_t n, int d);
/// `count` distinct nonzero exponents of degree <= d drawn from dense_set(n, d).
ExponentSet random_sparse_set(std::size_t n, int d, std::size_t count, std::uint64_t seed);

/// "intro", "A2-like", "A5-like", "dense:n:d" or "random:n:d:k:seed".
/// Dense sets in three or more variables are capped at d <= 7 unless
/// `allow_large` is set.
NamedSet named_set(std::string_view name, bool allow_large = false);

/// `count` vectors with entries 2u - 1, u = unit_uniform, one generator for
/// the whole batch.
std::vector<std::vector<double>> sample_coefficients(const ExponentSet& exponents,
                                                     std::uint64_t seed, std::size_t count);

SparsePolynomial polynomial_from(const ExponentSet& exponents, std::span<const double> coeffs,
                                 std::size_t dimension);

/// Pattern types in enumeration order; an empty list means singletons only.
struct Combination {
  std::vector<PatternType> types;

  /// "single" or tags joined by '+', e.g. "ML+AC+CH+SC".
  static Combination parse(std::string_view text);
  std::string label() const;
  PatternFamily family_for(const ExponentSet& exponents) const;
};

struct WidthBound {
  double width = 0.0;
  double lower = 0.0;  // relaxation bound for min f
  double upper = 0.0;  // relaxation bound for max f
  std::size_t iterations_min = 0;
  std::size_t iterations_max = 0;
  std::size_t cuts = 0;
  bool timed_out = false;
};

struct RelaxationSettings {
  double epsilon = 1e-4;
  SeparationConfig separation;
  SolveOptions solve;
};

/// Relaxation width: upper bound for max f minus lower bound for min f.
WidthBound width_bound(const PatternFamily& family, const SparsePolynomial& f,
                       const BoxDomain& box, const RelaxationSettings& settings = {});

/// Width of the singleton relaxation, in closed form.
double singleton_width(const SparsePolynomial& f, const BoxDomain& box);

class DegenerateInstance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// width_bound / singleton_width. Throws DegenerateInstance when the
/// denominator vanishes.
double nu(const PatternFamily& family, const SparsePolynomial& f, const BoxDomain& box,
          const RelaxationSettings& settings = {});

struct BoxplotStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double lower_whisker = 0.0;
  double upper_whisker = 0.0;
  std::vector<double> outliers;
};

/// Linear-interpolation quantile (Hyndman-Fan type 7) of sorted data.
double quantile(std::span<const double> sorted, double p);

/// Quartiles by linear interpolation; whiskers are the most extreme data
/// points within 1.5 IQR of the box.
BoxplotStats boxplot_stats(std::vector<double> values);

struct ExperimentConfig {
  NamedSet set;
  std::vector<Combination> combinations;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  double epsilon = 1e-4;
  CoveringSpec covering;
  std::optional<BoxDomain> box;  // [0,1]^n when unset
  OracleConfig oracle;
  /// Per-run wall-clock budget in seconds.
  double time_budget = 60.0;
  std::size_t jobs = 1;
  bool timing = false;

  BoxDomain domain() const;
};

struct InstanceRecord {
  std::size_t instance_id = 0;
  std::string set_name;
  std::string combination;
  double nu = 0.0;
  double nu_ref = 0.0;
  std::size_t iterations_min = 0;
  std::size_t iterations_max = 0;
  std::size_t cuts = 0;
  double wall_ms = 0.0;
  bool timed_out = false;
  std::string error;  // empty on success
};

struct CombinationSummary {
  std::string combination;
  std::size_t family_size = 0;
  std::optional<BoxplotStats> nu;
  std::optional<BoxplotStats> nu_ref;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<InstanceRecord> records;  // by instance, then combination
  std::vector<CombinationSummary> summaries;

  std::size_t failures() const;
  std::size_t timeouts() const;
};

void validate(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string_view prng_description();
std::string_view quantile_description();

/// CSV with the header instance_id,set_name,combination,nu,nu_ref,
/// iterations_min,iterations_max,cuts,wall_ms. Reals use %.17g; failed
/// instances carry nan; wall_ms is empty unless timing was requested.
std::string results_csv(const ExperimentResult& result);

/// Box plot of nu next to the reference ratios for one combination.
std::string boxplot_svg(const CombinationSummary& summary);

/// File-name friendly form of a combination label.
std::string slug(std::string_view label);

}  // namespace patrelax
