#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace patrelax {

/// Exponent of a monomial x^alpha, a fixed-length vector of nonnegative
/// integers. Ordered lexicographically.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<int> entries);
  explicit ExponentVector(std::vector<int> entries);

  static ExponentVector zero(std::size_t n) { return ExponentVector(n); }
  static ExponentVector unit(std::size_t n, std::size_t i, int scale = 1);

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, int value);
  const std::vector<int>& entries() const { return e_; }

  bool is_zero() const;
  int degree() const;
  /// Indices with a nonzero entry, increasing.
  std::vector<std::size_t> support() const;
  /// gcd of the entries; 0 for the zero vector.
  int gcd() const;
  bool disjoint_support(const ExponentVector& other) const;

  ExponentVector operator+(const ExponentVector& other) const;
  ExponentVector operator*(int k) const;
  /// Exact division; every entry must be divisible by k.
  ExponentVector divided_by(int k) const;
  /// Entry-wise (Hadamard) product.
  ExponentVector hadamard(const ExponentVector& other) const;

  std::string to_string() const;

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<int> e_;
};

using ExponentSet = std::set<ExponentVector>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// K = [a_1,b_1] x ... x [a_n,b_n] with a_i < b_i.
class BoxDomain {
 public:
  BoxDomain(std::vector<double> lower, std::vector<double> upper);
  static BoxDomain unit(std::size_t n);

  std::size_t dimension() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  Interval axis(std::size_t i) const { return {lower_[i], upper_[i]}; }
  bool contains(std::span<const double> x) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Real polynomial stored as exponent -> coefficient. Zero coefficients are
/// never stored.
class SparsePolynomial {
 public:
  explicit SparsePolynomial(std::size_t dimension);
  SparsePolynomial(std::size_t dimension,
                   const std::map<ExponentVector, double>& terms);

  std::size_t dimension() const { return dimension_; }
  const std::map<ExponentVector, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Adds `coefficient` to the existing term (dropping it if it cancels).
  void add_term(const ExponentVector& alpha, double coefficient);
  double coefficient(const ExponentVector& alpha) const;
  ExponentSet support() const;
  double max_abs_coefficient() const;

  SparsePolynomial operator-() const;

 private:
  std::size_t dimension_;
  std::map<ExponentVector, double> terms_;
};

/// Vector indexed by an ordered exponent set. Used both for candidate
/// relaxation points and for the moment vector m^A(x).
class MomentPoint {
 public:
  MomentPoint() = default;
  MomentPoint(std::vector<ExponentVector> index, std::vector<double> values);

  std::size_t size() const { return index_.size(); }
  const std::vector<ExponentVector>& index() const { return index_; }
  const std::vector<double>& values() const { return values_; }
  bool contains(const ExponentVector& alpha) const;
  /// Throws std::out_of_range if alpha is not in the index.
  double value(const ExponentVector& alpha) const;
  /// Coordinate projection onto `subset` (in the order given).
  MomentPoint restrict_to(std::span<const ExponentVector> subset) const;

 private:
  std::vector<ExponentVector> index_;
  std::vector<double> values_;
  std::vector<std::size_t> sorted_;  // positions of index_ in lexicographic order
};

/// x^alpha with 0^0 = 1.
double monomial_value(const ExponentVector& alpha, std::span<const double> x);

double eval_poly(const SparsePolynomial& f, std::span<const double> x);

MomentPoint moment_map(std::span<const ExponentVector> exponents,
                       std::span<const double> x);

/// Exact range of t -> t^k over [a, b].
Interval power_interval(double a, double b, int k);

/// Exact [min, max] of x^alpha over the box.
Interval monomial_bounds(const ExponentVector& alpha, const BoxDomain& box);

/// Integer power with 0^0 = 1.
double ipow(double base, int k);

}  // namespace patrelax
