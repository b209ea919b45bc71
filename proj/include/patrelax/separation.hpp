#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patrelax/pattern.hpp"
#include "patrelax/poly.hpp"

namespace patrelax {

/// Valid inequality <c, v_P> >= offset for the moment body of one pattern.
struct Cut {
  std::size_t pattern_index = 0;
  std::map<ExponentVector, double> coeffs;
  double offset = 0.0;
  double distance = 0.0;

  /// <c, v> over the pattern elements; `v` must contain all of them.
  double lhs(const MomentPoint& v) const;
};

/// Contiguous segments covering [a, b]. Equal splits are kept implicit so
/// that fine tolerance coverings with millions of segments cost nothing.
class Covering {
 public:
  static Covering equal(double a, double b, std::size_t count);
  /// Strictly increasing breakpoints a = t_0 < ... < t_m = b.
  static Covering from_breakpoints(std::vector<double> breakpoints);

  std::size_t size() const { return count_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  Interval segment(std::size_t i) const;
  double left(std::size_t i) const;
  double fineness() const;
  std::vector<Interval> segments() const;

 private:
  Covering() = default;

  double a_ = 0.0;
  double b_ = 1.0;
  std::size_t count_ = 1;
  std::vector<double> breaks_;  // empty for equal splits
};

Covering covering_equal(double a, double b, std::size_t count);
/// Equal covering with fineness at most C* eps, C* = 1 / (d^2 max(M, 1)^d)
/// and M = max(|a|, |b|) + (b - a).
Covering covering_for_tolerance(double a, double b, int d, double eps);

/// How chain coverings are chosen: "equal:N" or "tol:EPS".
struct CoveringSpec {
  enum class Kind { kEqual, kTolerance };
  Kind kind = Kind::kEqual;
  std::size_t count = 9;
  double tolerance = 1e-4;

  static CoveringSpec parse(const std::string& text);
  std::string to_string() const;
};

struct SeparationConfig {
  CoveringSpec covering;
};

using Matrix = std::vector<std::vector<double>>;

/// (d+1) x (d+1) matrix with entries binom(k, j) l^(k-j) (u-l)^j.
Matrix phi_matrix(double l, double u, int d);
/// The d+1 vectors Phi u^i with u^i = e^0 + ... + e^i.
Matrix delta_vertices(double l, double u, int d);

/// Vertices of the multilinear moment body, each indexed like
/// ml_pattern(alpha).elements().
Matrix ml_vertex_set(const ExponentVector& alpha, const BoxDomain& box);

std::optional<Cut> separate_singleton(const ExponentVector& alpha, double value,
                                      const BoxDomain& box);
/// `v` is indexed like ml_pattern(alpha).elements().
std::optional<Cut> separate_multilinear(const ExponentVector& alpha, std::span<const double> v,
                                        const BoxDomain& box);
/// `v` is indexed like chain_pattern(gamma, d).elements(); the covering must
/// span [x^gamma_min, x^gamma_max].
std::optional<Cut> separate_chain(const ExponentVector& gamma, int d, std::span<const double> v,
                                  const BoxDomain& box, const Covering& covering);
std::optional<Cut> separate_shifted_chain(const ExponentVector& eta, const ExponentVector& gamma,
                                          int d, std::span<const double> v, const BoxDomain& box,
                                          const Covering& covering);

class PatternUnsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class VertexSource;

/// Separation oracle for one pattern, with its vertex description built once.
class PatternSeparator {
 public:
  PatternSeparator(Pattern pattern, const BoxDomain& box, const SeparationConfig& config = {});
  ~PatternSeparator();
  PatternSeparator(PatternSeparator&&) noexcept;
  PatternSeparator& operator=(PatternSeparator&&) noexcept;

  const Pattern& pattern() const { return pattern_; }
  /// Covering used for chain-type patterns, if any.
  const Covering* covering() const;

  /// Cut with positive distance, or nothing when v_P lies in the (outer
  /// approximation of the) moment body.
  std::optional<Cut> separate(const MomentPoint& v) const;

 private:
  Pattern pattern_;
  std::optional<Interval> singleton_range_;
  std::unique_ptr<VertexSource> source_;
};

std::optional<Cut> separate(const Pattern& pattern, const MomentPoint& v, const BoxDomain& box,
                            const SeparationConfig& config = {});

/// Smallest <c, s w> over the Delta vertices w of every covering segment.
struct DeltaMinimum {
  double value = 0.0;
  std::size_t segment = 0;
  int order = 0;
};
/// `c` holds chain coefficients in power order. Exposed for testing the
/// pruned search against plain enumeration.
DeltaMinimum delta_vertex_minimum(std::span<const double> c, double scale,
                                  const Covering& covering, bool prune = true);

}  // namespace patrelax
