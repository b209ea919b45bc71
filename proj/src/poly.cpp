#include "patrelax/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace patrelax {

ExponentVector::ExponentVector(std::initializer_list<int> entries)
    : ExponentVector(std::vector<int>(entries)) {}

ExponentVector::ExponentVector(std::vector<int> entries) : e_(std::move(entries)) {
  for (int v : e_) {
    if (v < 0) throw std::invalid_argument("exponent entries must be nonnegative");
  }
}

ExponentVector ExponentVector::unit(std::size_t n, std::size_t i, int scale) {
  ExponentVector e(n);
  e.set(i, scale);
  return e;
}

void ExponentVector::set(std::size_t i, int value) {
  if (value < 0) throw std::invalid_argument("exponent entries must be nonnegative");
  e_.at(i) = value;
}

bool ExponentVector::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

int ExponentVector::degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

std::vector<std::size_t> ExponentVector::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] != 0) s.push_back(i);
  }
  return s;
}

int ExponentVector::gcd() const {
  int g = 0;
  for (int v : e_) g = std::gcd(g, v);
  return g;
}

bool ExponentVector::disjoint_support(const ExponentVector& other) const {
  if (other.size() != size()) throw std::invalid_argument("exponent dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] != 0 && other.e_[i] != 0) return false;
  }
  return true;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  if (other.size() != size()) throw std::invalid_argument("exponent dimension mismatch");
  ExponentVector r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += other.e_[i];
  return r;
}

ExponentVector ExponentVector::operator*(int k) const {
  if (k < 0) throw std::invalid_argument("negative exponent scale");
  ExponentVector r = *this;
  for (int& v : r.e_) v *= k;
  return r;
}

ExponentVector ExponentVector::divided_by(int k) const {
  if (k <= 0) throw std::invalid_argument("exponent divisor must be positive");
  ExponentVector r = *this;
  for (int& v : r.e_) {
    if (v % k != 0) throw std::invalid_argument("exponent not divisible");
    v /= k;
  }
  return r;
}

ExponentVector ExponentVector::hadamard(const ExponentVector& other) const {
  if (other.size() != size()) throw std::invalid_argument("exponent dimension mismatch");
  ExponentVector r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] *= other.e_[i];
  return r;
}

std::string ExponentVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.empty()) {
    throw std::invalid_argument("box bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
      throw std::invalid_argument("box requires finite a_i < b_i");
    }
  }
}

BoxDomain BoxDomain::unit(std::size_t n) {
  return BoxDomain(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0));
}

bool BoxDomain::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

SparsePolynomial::SparsePolynomial(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("polynomial dimension must be positive");
}

SparsePolynomial::SparsePolynomial(std::size_t dimension,
                                   const std::map<ExponentVector, double>& terms)
    : SparsePolynomial(dimension) {
  for (const auto& [alpha, c] : terms) add_term(alpha, c);
}

void SparsePolynomial::add_term(const ExponentVector& alpha, double coefficient) {
  if (alpha.size() != dimension_) throw std::invalid_argument("exponent dimension mismatch");
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double SparsePolynomial::coefficient(const ExponentVector& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

ExponentSet SparsePolynomial::support() const {
  ExponentSet s;
  for (const auto& [alpha, c] : terms_) s.insert(alpha);
  return s;
}

double SparsePolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

SparsePolynomial SparsePolynomial::operator-() const {
  SparsePolynomial r(dimension_);
  for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha, -c);
  return r;
}

MomentPoint::MomentPoint(std::vector<ExponentVector> index, std::vector<double> values)
    : index_(std::move(index)), values_(std::move(values)) {
  if (index_.size() != values_.size()) {
    throw std::invalid_argument("moment point index and values differ in length");
  }
  sorted_.resize(index_.size());
  std::iota(sorted_.begin(), sorted_.end(), std::size_t{0});
  std::sort(sorted_.begin(), sorted_.end(),
            [&](std::size_t a, std::size_t b) { return index_[a] < index_[b]; });
  for (std::size_t k = 1; k < sorted_.size(); ++k) {
    if (index_[sorted_[k - 1]] == index_[sorted_[k]]) {
      throw std::invalid_argument("duplicate exponent in moment point index");
    }
  }
}

bool MomentPoint::contains(const ExponentVector& alpha) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), alpha,
                             [&](std::size_t p, const ExponentVector& a) { return index_[p] < a; });
  return it != sorted_.end() && index_[*it] == alpha;
}

double MomentPoint::value(const ExponentVector& alpha) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), alpha,
                             [&](std::size_t p, const ExponentVector& a) { return index_[p] < a; });
  if (it == sorted_.end() || index_[*it] != alpha) {
    throw std::out_of_range("exponent " + alpha.to_string() + " not in moment point");
  }
  return values_[*it];
}

MomentPoint MomentPoint::restrict_to(std::span<const ExponentVector> subset) const {
  std::vector<ExponentVector> idx(subset.begin(), subset.end());
  std::vector<double> vals;
  vals.reserve(idx.size());
  for (const auto& alpha : idx) vals.push_back(value(alpha));
  return MomentPoint(std::move(idx), std::move(vals));
}

double ipow(double base, int k) {
  double r = 1.0;
  double b = base;
  unsigned e = static_cast<unsigned>(k);
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

double monomial_value(const ExponentVector& alpha, std::span<const double> x) {
  if (alpha.size() != x.size()) throw std::invalid_argument("dimension mismatch");
  double r = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (alpha[i] != 0) r *= ipow(x[i], alpha[i]);
  }
  return r;
}

double eval_poly(const SparsePolynomial& f, std::span<const double> x) {
  if (x.size() != f.dimension()) throw std::invalid_argument("dimension mismatch");
  double sum = 0.0;
  for (const auto& [alpha, c] : f.terms()) sum += c * monomial_value(alpha, x);
  return sum;
}

MomentPoint moment_map(std::span<const ExponentVector> exponents, std::span<const double> x) {
  std::vector<ExponentVector> idx(exponents.begin(), exponents.end());
  std::vector<double> vals;
  vals.reserve(idx.size());
  for (const auto& alpha : idx) vals.push_back(monomial_value(alpha, x));
  return MomentPoint(std::move(idx), std::move(vals));
}

Interval power_interval(double a, double b, int k) {
  if (!(a < b)) throw std::invalid_argument("power_interval requires a < b");
  if (k == 0) return {1.0, 1.0};
  const double pa = ipow(a, k);
  const double pb = ipow(b, k);
  if (k % 2 == 0 && a < 0.0 && b > 0.0) return {0.0, std::max(pa, pb)};
  return {std::min(pa, pb), std::max(pa, pb)};
}

Interval monomial_bounds(const ExponentVector& alpha, const BoxDomain& box) {
  if (alpha.size() != box.dimension()) throw std::invalid_argument("dimension mismatch");
  Interval acc{1.0, 1.0};
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    const Interval f = power_interval(box.lower()[i], box.upper()[i], alpha[i]);
    const double p[4] = {acc.lo * f.lo, acc.lo * f.hi, acc.hi * f.lo, acc.hi * f.hi};
    acc = {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
  }
  return acc;
}

}  // namespace patrelax
