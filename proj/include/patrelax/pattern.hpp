#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "patrelax/poly.hpp"

namespace patrelax {

struct SingletonParams {
  ExponentVector alpha;
};

struct MultilinearParams {
  ExponentVector alpha;
};

struct ChainParams {
  ExponentVector gamma;
  int degree = 0;
};

struct ShiftedChainParams {
  ExponentVector eta;
  ExponentVector gamma;
  int degree = 0;
};

/// TS(Gamma, B) with B = {0..beta_1} x ... x {0..beta_n}.
struct TruncatedSubmonoidParams {
  std::vector<ExponentVector> generators;
  ExponentVector box_corner;
};

enum class PatternKind { kSingleton, kMultilinear, kChain, kShiftedChain, kTruncatedSubmonoid };

std::string_view kind_name(PatternKind kind);

/// A finite exponent set whose moment body has a tractable separation
/// problem. Element sets are computed on construction and kept sorted.
class Pattern {
 public:
  using Params = std::variant<SingletonParams, MultilinearParams, ChainParams,
                              ShiftedChainParams, TruncatedSubmonoidParams>;

  static Pattern singleton(const ExponentVector& alpha);
  static Pattern multilinear(const ExponentVector& alpha);
  static Pattern chain(const ExponentVector& gamma, int degree);
  static Pattern shifted_chain(const ExponentVector& eta, const ExponentVector& gamma, int degree);
  static Pattern truncated_submonoid(std::vector<ExponentVector> generators,
                                     const ExponentVector& box_corner);

  PatternKind kind() const;
  const Params& params() const { return params_; }
  const std::vector<ExponentVector>& elements() const { return elements_; }
  std::size_t dimension() const { return elements_.front().size(); }
  bool contains(const ExponentVector& alpha) const;
  bool is_subset_of(const Pattern& other) const;
  std::string describe() const;

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.elements_ == b.elements_; }

 private:
  Pattern(Params params, std::vector<ExponentVector> elements);

  Params params_;
  std::vector<ExponentVector> elements_;
};

Pattern ml_pattern(const ExponentVector& alpha);
Pattern chain_pattern(const ExponentVector& gamma, int degree);
Pattern shifted_chain_pattern(const ExponentVector& eta, const ExponentVector& gamma, int degree);

/// Result of rewriting TS(Gamma, B) as a k-variate moment body.
struct Reparametrization {
  std::vector<ExponentVector> exponents;  // P~ in N^k, sorted
  BoxDomain box;                          // K~ in R^k
};

Reparametrization ts_reparametrize(std::span<const ExponentVector> generators,
                                   const ExponentVector& box_corner, const BoxDomain& box);

/// Ordered list of patterns together with the cover A-bar = union of
/// elements. No stored pattern is a subset of another.
class PatternFamily {
 public:
  PatternFamily() = default;

  const std::vector<Pattern>& patterns() const { return patterns_; }
  const ExponentSet& cover() const { return cover_; }
  std::size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }

  /// Skips `p` if it is contained in a stored pattern. Otherwise appends it,
  /// drops stored patterns contained in `p`, and grows the cover. Returns
  /// whether `p` was appended.
  bool add_pattern(const Pattern& p);

 private:
  std::vector<Pattern> patterns_;
  ExponentSet cover_;
};

enum class PatternType { kMultilinear, kAxisChain, kChain, kShiftedChain };

/// Parses "ML", "AC", "CH" or "SC".
PatternType parse_pattern_type(std::string_view tag);
std::string_view pattern_type_tag(PatternType type);
/// The default enumeration order ML, AC, CH, SC.
std::vector<PatternType> default_type_order();

// Find routines. Each one grows `family` through add_pattern and `abar` with
// the elements of every appended pattern; iteration runs over a
// lexicographically ordered snapshot of `abar`.
void find_multilinear(PatternFamily& family, ExponentSet& abar);
void find_chains(PatternFamily& family, ExponentSet& abar);
void find_shifted_chains(PatternFamily& family, ExponentSet& abar);
void find_axis_chains(PatternFamily& family, ExponentSet& abar);

struct GeneratedPatterns {
  PatternFamily family;
  ExponentSet abar;
};

GeneratedPatterns generate_patterns(const ExponentSet& exponents,
                                    std::span<const PatternType> type_order);

/// Family of singletons {alpha} for alpha in `exponents`.
PatternFamily singleton_family(const ExponentSet& exponents);

}  // namespace patrelax
