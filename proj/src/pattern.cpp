#include "patrelax/pattern.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace patrelax {
namespace {

constexpr std::size_t kMaxMultilinearSupport = 20;

std::vector<ExponentVector> sorted_unique(std::vector<ExponentVector> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_same_dimension(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent dimension mismatch");
}

std::string join(const std::vector<ExponentVector>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].to_string();
  }
  return s;
}

}  // namespace

std::string_view kind_name(PatternKind kind) {
  switch (kind) {
    case PatternKind::kSingleton: return "singleton";
    case PatternKind::kMultilinear: return "multilinear";
    case PatternKind::kChain: return "chain";
    case PatternKind::kShiftedChain: return "shifted_chain";
    case PatternKind::kTruncatedSubmonoid: return "truncated_submonoid";
  }
  return "unknown";
}

Pattern::Pattern(Params params, std::vector<ExponentVector> elements)
    : params_(std::move(params)), elements_(sorted_unique(std::move(elements))) {}

Pattern Pattern::singleton(const ExponentVector& alpha) {
  if (alpha.size() == 0) throw std::invalid_argument("empty exponent vector");
  return Pattern(SingletonParams{alpha}, {alpha});
}

Pattern Pattern::multilinear(const ExponentVector& alpha) {
  if (alpha.size() == 0) throw std::invalid_argument("empty exponent vector");
  const auto supp = alpha.support();
  if (supp.size() > kMaxMultilinearSupport) {
    throw std::length_error("multilinear pattern support too large");
  }
  std::vector<ExponentVector> elements;
  elements.reserve(std::size_t{1} << supp.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << supp.size()); ++mask) {
    ExponentVector e(alpha.size());
    for (std::size_t b = 0; b < supp.size(); ++b) {
      if (mask & (std::size_t{1} << b)) e.set(supp[b], alpha[supp[b]]);
    }
    elements.push_back(std::move(e));
  }
  return Pattern(MultilinearParams{alpha}, std::move(elements));
}

Pattern Pattern::chain(const ExponentVector& gamma, int degree) {
  if (gamma.size() == 0 || gamma.is_zero()) {
    throw std::invalid_argument("chain generator must be nonzero");
  }
  if (degree < 1) throw std::invalid_argument("chain degree must be positive");
  std::vector<ExponentVector> elements;
  for (int i = 0; i <= degree; ++i) elements.push_back(gamma * i);
  return Pattern(ChainParams{gamma, degree}, std::move(elements));
}

Pattern Pattern::shifted_chain(const ExponentVector& eta, const ExponentVector& gamma,
                               int degree) {
  require_same_dimension(eta, gamma);
  if (gamma.is_zero()) throw std::invalid_argument("chain generator must be nonzero");
  if (eta.is_zero()) throw std::invalid_argument("shift must be nonzero");
  if (!eta.disjoint_support(gamma)) {
    throw std::invalid_argument("shift and generator supports overlap");
  }
  if (degree < 1) throw std::invalid_argument("chain degree must be positive");
  std::vector<ExponentVector> elements;
  for (int i = 0; i <= degree; ++i) elements.push_back(eta + gamma * i);
  return Pattern(ShiftedChainParams{eta, gamma, degree}, std::move(elements));
}

Pattern Pattern::truncated_submonoid(std::vector<ExponentVector> generators,
                                     const ExponentVector& box_corner) {
  const std::size_t n = box_corner.size();
  if (generators.empty() || generators.size() > n) {
    throw std::invalid_argument("truncated submonoid needs 1..n generators");
  }
  std::vector<int> limits;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    require_same_dimension(g, box_corner);
    if (g.is_zero()) throw std::invalid_argument("submonoid generator must be nonzero");
    int limit = -1;
    for (std::size_t j : g.support()) {
      if (g[j] > box_corner[j]) throw std::invalid_argument("submonoid generator outside box");
      const int l = box_corner[j] / g[j];
      limit = limit < 0 ? l : std::min(limit, l);
    }
    limits.push_back(limit);
    for (std::size_t k = 0; k < i; ++k) {
      if (!g.disjoint_support(generators[k])) {
        throw std::invalid_argument("submonoid generators must have disjoint supports");
      }
    }
  }
  // Disjoint supports: Gamma*omega lies in B iff every omega_i does on its own.
  std::vector<ExponentVector> elements;
  std::vector<int> omega(generators.size(), 0);
  while (true) {
    ExponentVector e(n);
    for (std::size_t i = 0; i < generators.size(); ++i) e = e + generators[i] * omega[i];
    elements.push_back(std::move(e));
    std::size_t pos = 0;
    while (pos < omega.size() && omega[pos] == limits[pos]) omega[pos++] = 0;
    if (pos == omega.size()) break;
    ++omega[pos];
  }
  return Pattern(TruncatedSubmonoidParams{std::move(generators), box_corner}, std::move(elements));
}

PatternKind Pattern::kind() const { return static_cast<PatternKind>(params_.index()); }

bool Pattern::contains(const ExponentVector& alpha) const {
  return std::binary_search(elements_.begin(), elements_.end(), alpha);
}

bool Pattern::is_subset_of(const Pattern& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

std::string Pattern::describe() const {
  struct Visitor {
    std::string operator()(const SingletonParams& p) const { return "{" + p.alpha.to_string() + "}"; }
    std::string operator()(const MultilinearParams& p) const { return "ML(" + p.alpha.to_string() + ")"; }
    std::string operator()(const ChainParams& p) const {
      return "CH(" + p.gamma.to_string() + "," + std::to_string(p.degree) + ")";
    }
    std::string operator()(const ShiftedChainParams& p) const {
      return p.eta.to_string() + "+CH(" + p.gamma.to_string() + "," + std::to_string(p.degree) + ")";
    }
    std::string operator()(const TruncatedSubmonoidParams& p) const {
      return "TS([" + join(p.generators) + "]," + p.box_corner.to_string() + ")";
    }
  };
  return std::visit(Visitor{}, params_);
}

Pattern ml_pattern(const ExponentVector& alpha) { return Pattern::multilinear(alpha); }

Pattern chain_pattern(const ExponentVector& gamma, int degree) {
  return Pattern::chain(gamma, degree);
}

Pattern shifted_chain_pattern(const ExponentVector& eta, const ExponentVector& gamma, int degree) {
  return Pattern::shifted_chain(eta, gamma, degree);
}

Reparametrization ts_reparametrize(std::span<const ExponentVector> generators,
                                   const ExponentVector& box_corner, const BoxDomain& box) {
  if (box_corner.size() != box.dimension()) throw std::invalid_argument("dimension mismatch");
  const Pattern ts = Pattern::truncated_submonoid(
      std::vector<ExponentVector>(generators.begin(), generators.end()), box_corner);
  const std::size_t k = generators.size();

  std::vector<ExponentVector> reduced;
  for (const auto& e : ts.elements()) {
    ExponentVector omega(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = generators[i].support().front();
      omega.set(i, e[j] / generators[i][j]);
    }
    reduced.push_back(std::move(omega));
  }
  std::sort(reduced.begin(), reduced.end());

  std::vector<double> lo, hi;
  for (const auto& g : generators) {
    const Interval r = monomial_bounds(g, box);
    lo.push_back(r.lo);
    hi.push_back(r.hi);
  }
  return {std::move(reduced), BoxDomain(std::move(lo), std::move(hi))};
}

bool PatternFamily::add_pattern(const Pattern& p) {
  for (const auto& q : patterns_) {
    if (p.is_subset_of(q)) return false;
  }
  std::erase_if(patterns_, [&](const Pattern& q) { return q.is_subset_of(p); });
  patterns_.push_back(p);
  cover_.insert(p.elements().begin(), p.elements().end());
  return true;
}

PatternType parse_pattern_type(std::string_view tag) {
  if (tag == "ML") return PatternType::kMultilinear;
  if (tag == "AC") return PatternType::kAxisChain;
  if (tag == "CH") return PatternType::kChain;
  if (tag == "SC") return PatternType::kShiftedChain;
  throw std::invalid_argument("unknown pattern type tag '" + std::string(tag) + "'");
}

std::string_view pattern_type_tag(PatternType type) {
  switch (type) {
    case PatternType::kMultilinear: return "ML";
    case PatternType::kAxisChain: return "AC";
    case PatternType::kChain: return "CH";
    case PatternType::kShiftedChain: return "SC";
  }
  return "?";
}

std::vector<PatternType> default_type_order() {
  return {PatternType::kMultilinear, PatternType::kAxisChain, PatternType::kChain,
          PatternType::kShiftedChain};
}

namespace {

void add_and_grow(PatternFamily& family, ExponentSet& abar, const Pattern& p) {
  if (family.add_pattern(p)) abar.insert(p.elements().begin(), p.elements().end());
}

// Adds CH(g*dir, s/g) (or its shift by `base`) for the multiples in `values`.
void add_gcd_chain(PatternFamily& family, ExponentSet& abar, const ExponentVector& base,
                   const ExponentVector& dir, const std::vector<int>& values) {
  int s = 0;
  int g = 0;
  for (int t : values) {
    s = std::max(s, t);
    g = std::gcd(g, t);
  }
  if (g == 0) return;
  if (base.is_zero()) {
    add_and_grow(family, abar, Pattern::chain(dir * g, s / g));
  } else {
    add_and_grow(family, abar, Pattern::shifted_chain(base, dir * g, s / g));
  }
}

}  // namespace

void find_multilinear(PatternFamily& family, ExponentSet& abar) {
  const std::vector<ExponentVector> snapshot(abar.begin(), abar.end());
  for (const auto& alpha : snapshot) add_and_grow(family, abar, Pattern::multilinear(alpha));
}

void find_chains(PatternFamily& family, ExponentSet& abar) {
  ExponentSet directions;
  for (const auto& alpha : abar) {
    if (!alpha.is_zero()) directions.insert(alpha.divided_by(alpha.gcd()));
  }
  for (const auto& beta : directions) {
    const std::size_t lead = beta.support().front();
    std::vector<int> multiples;
    for (const auto& alpha : abar) {
      if (alpha.is_zero() || alpha[lead] % beta[lead] != 0) continue;
      const int t = alpha[lead] / beta[lead];
      if (t > 0 && beta * t == alpha) multiples.push_back(t);
    }
    add_gcd_chain(family, abar, ExponentVector::zero(beta.size()), beta, multiples);
  }
}

void find_shifted_chains(PatternFamily& family, ExponentSet& abar) {
  if (abar.empty()) return;
  const std::size_t n = abar.begin()->size();
  for (std::size_t i = 0; i < n; ++i) {
    // Class key: alpha with entry i zeroed, which orders like pi^i(alpha).
    std::map<ExponentVector, std::vector<int>> classes;
    for (const auto& alpha : abar) {
      ExponentVector key = alpha;
      key.set(i, 0);
      auto& values = classes[key];
      if (alpha[i] != 0) values.push_back(alpha[i]);
    }
    for (const auto& [base, values] : classes) {
      add_gcd_chain(family, abar, base, ExponentVector::unit(n, i), values);
    }
  }
}

void find_axis_chains(PatternFamily& family, ExponentSet& abar) {
  if (abar.empty()) return;
  const std::size_t n = abar.begin()->size();
  std::vector<std::vector<int>> values(n);
  for (const auto& alpha : abar) {
    const auto supp = alpha.support();
    if (supp.size() == 1) values[supp[0]].push_back(alpha[supp[0]]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    add_gcd_chain(family, abar, ExponentVector::zero(n), ExponentVector::unit(n, i), values[i]);
  }
}

GeneratedPatterns generate_patterns(const ExponentSet& exponents,
                                    std::span<const PatternType> type_order) {
  if (exponents.empty()) throw std::invalid_argument("exponent set must be nonempty");
  GeneratedPatterns out;
  out.abar = exponents;
  for (PatternType type : type_order) {
    switch (type) {
      case PatternType::kMultilinear: find_multilinear(out.family, out.abar); break;
      case PatternType::kAxisChain: find_axis_chains(out.family, out.abar); break;
      case PatternType::kChain: find_chains(out.family, out.abar); break;
      case PatternType::kShiftedChain: find_shifted_chains(out.family, out.abar); break;
    }
  }
  return out;
}

PatternFamily singleton_family(const ExponentSet& exponents) {
  PatternFamily family;
  for (const auto& alpha : exponents) family.add_pattern(Pattern::singleton(alpha));
  return family;
}

}  // namespace patrelax
