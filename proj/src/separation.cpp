#include "patrelax/separation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "patrelax/lp.hpp"

namespace patrelax {

namespace {

constexpr double kCutThreshold = 1e-11;
constexpr std::size_t kLeafSegments = 64;
constexpr std::size_t kSeedSegments = 16;
constexpr std::size_t kMaxSeparationRounds = 5000;
constexpr double kSeparationGap = 1e-10;
constexpr std::size_t kStallRounds = 4;
constexpr double kMaxSegments = 1e12;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// In-place Taylor shift: on return b[j] = q^(j)(l) / j!.
void taylor_shift(std::vector<double>& b, double l) {
  const std::size_t d = b.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = d; k-- > j;) b[k] += l * b[k + 1];
  }
}

}  // namespace

double Cut::lhs(const MomentPoint& v) const {
  double s = 0.0;
  for (const auto& [alpha, c] : coeffs) s += c * v.value(alpha);
  return s;
}

Covering Covering::equal(double a, double b, std::size_t count) {
  if (!(a < b)) throw std::invalid_argument("covering requires a < b");
  if (count < 1) throw std::invalid_argument("covering needs at least one segment");
  Covering c;
  c.a_ = a;
  c.b_ = b;
  c.count_ = count;
  return c;
}

Covering Covering::from_breakpoints(std::vector<double> breakpoints) {
  if (breakpoints.size() < 2) throw std::invalid_argument("covering needs two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw std::invalid_argument("breakpoints must increase strictly");
    }
  }
  Covering c;
  c.a_ = breakpoints.front();
  c.b_ = breakpoints.back();
  c.count_ = breakpoints.size() - 1;
  c.breaks_ = std::move(breakpoints);
  return c;
}

double Covering::left(std::size_t i) const {
  if (!breaks_.empty()) return breaks_[i];
  if (i == 0) return a_;
  if (i == count_) return b_;
  return a_ + (b_ - a_) * (static_cast<double>(i) / static_cast<double>(count_));
}

Interval Covering::segment(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("segment index out of range");
  return {left(i), left(i + 1)};
}

double Covering::fineness() const {
  if (breaks_.empty()) {
    // Rounded breakpoints may differ from the nominal width in the last ulp.
    return (b_ - a_) / static_cast<double>(count_) * (1.0 + 1e-12);
  }
  double w = 0.0;
  for (std::size_t i = 0; i < count_; ++i) w = std::max(w, breaks_[i + 1] - breaks_[i]);
  return w;
}

std::vector<Interval> Covering::segments() const {
  std::vector<Interval> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) out.push_back(segment(i));
  return out;
}

Covering covering_equal(double a, double b, std::size_t count) {
  return Covering::equal(a, b, count);
}

Covering covering_for_tolerance(double a, double b, int d, double eps) {
  if (!(a < b)) throw std::invalid_argument("covering requires a < b");
  if (d < 1) throw std::invalid_argument("covering degree must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("covering tolerance must be positive");
  const double m = std::max(std::max(std::abs(a), std::abs(b)) + (b - a), 1.0);
  // count = (b - a) / (C* eps) with C* = 1 / (d^2 m^d).
  const double raw = (b - a) * d * d * ipow(m, d) / eps;
  if (!(raw < kMaxSegments)) throw std::length_error("tolerance covering too fine");
  double count = std::ceil(raw);
  if (count - raw > 1.0 - 1e-9 * std::max(raw, 1.0)) count -= 1.0;  // absorb rounding noise
  return Covering::equal(a, b, static_cast<std::size_t>(std::max(count, 1.0)));
}

CoveringSpec CoveringSpec::parse(const std::string& text) {
  CoveringSpec spec;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("covering must be equal:N or tol:EPS");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  std::size_t used = 0;
  try {
    if (kind == "equal") {
      const long long n = std::stoll(arg, &used);
      if (n < 1) throw std::invalid_argument("count");
      spec.kind = Kind::kEqual;
      spec.count = static_cast<std::size_t>(n);
    } else if (kind == "tol") {
      const double eps = std::stod(arg, &used);
      if (!(eps > 0.0)) throw std::invalid_argument("eps");
      spec.kind = Kind::kTolerance;
      spec.tolerance = eps;
    } else {
      throw std::invalid_argument("kind");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid covering '" + text + "'");
  }
  if (used != arg.size()) throw std::invalid_argument("invalid covering '" + text + "'");
  return spec;
}

std::string CoveringSpec::to_string() const {
  if (kind == Kind::kEqual) return "equal:" + std::to_string(count);
  char buf[64];
  std::snprintf(buf, sizeof buf, "tol:%g", tolerance);
  return buf;
}

Matrix phi_matrix(double l, double u, int d) {
  if (!(l < u)) throw std::invalid_argument("phi_matrix requires l < u");
  if (d < 0) throw std::invalid_argument("negative degree");
  Matrix phi(d + 1, std::vector<double>(d + 1, 0.0));
  for (int k = 0; k <= d; ++k) {
    for (int j = 0; j <= k; ++j) phi[k][j] = binom(k, j) * ipow(l, k - j) * ipow(u - l, j);
  }
  return phi;
}

Matrix delta_vertices(double l, double u, int d) {
  const Matrix phi = phi_matrix(l, u, d);
  Matrix out;
  for (int i = 0; i <= d; ++i) {
    std::vector<double> w(d + 1, 0.0);
    for (int k = 0; k <= d; ++k) {
      for (int j = 0; j <= i; ++j) w[k] += phi[k][j];
    }
    out.push_back(std::move(w));
  }
  return out;
}

Matrix ml_vertex_set(const ExponentVector& alpha, const BoxDomain& box) {
  if (alpha.size() != box.dimension()) throw std::invalid_argument("dimension mismatch");
  const Pattern ml = Pattern::multilinear(alpha);
  const auto supp = alpha.support();
  std::vector<Interval> ranges;
  for (std::size_t i : supp) ranges.push_back(power_interval(box.lower()[i], box.upper()[i], alpha[i]));
  Matrix out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << supp.size()); ++mask) {
    std::vector<double> w;
    w.reserve(ml.elements().size());
    for (const auto& beta : ml.elements()) {
      double val = 1.0;
      for (std::size_t b = 0; b < supp.size(); ++b) {
        if (beta[supp[b]] == 0) continue;
        val *= (mask >> b) & 1u ? ranges[b].hi : ranges[b].lo;
      }
      w.push_back(val);
    }
    out.push_back(std::move(w));
  }
  return out;
}

// Finite point set whose convex hull is the body to separate from.
class VertexSource {
 public:
  virtual ~VertexSource() = default;
  virtual std::size_t dim() const = 0;
  virtual void seed(Matrix& out) const = 0;
  // Appends up to `k` vertices with <c, w> < threshold, smallest first, and
  // returns min_w <c, w> over the whole set.
  virtual double lowest(std::span<const double> c, double threshold, std::size_t k,
                        Matrix& out) const = 0;
  virtual const Covering* covering() const { return nullptr; }
};

namespace {

class ExplicitSource final : public VertexSource {
 public:
  explicit ExplicitSource(Matrix vertices) : vertices_(std::move(vertices)) {}

  std::size_t dim() const override { return vertices_.front().size(); }

  void seed(Matrix& out) const override {
    const std::size_t take = std::min<std::size_t>(vertices_.size(), 256);
    out.insert(out.end(), vertices_.begin(), vertices_.begin() + static_cast<std::ptrdiff_t>(take));
  }

  double lowest(std::span<const double> c, double threshold, std::size_t k,
                Matrix& out) const override {
    std::vector<std::pair<double, std::size_t>> vals;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * vertices_[i][j];
      best = std::min(best, s);
      if (s < threshold) vals.emplace_back(s, i);
    }
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i < std::min(k, vals.size()); ++i) out.push_back(vertices_[vals[i].second]);
    return best;
  }

 private:
  Matrix vertices_;
};

using Candidate = std::tuple<double, std::size_t, int>;  // value, segment, order

// Branch and bound over covering segments for min over Delta vertices of the
// polynomial q(t) = sum_k q_k t^k, i.e. of its Taylor partial sums at l.
class DeltaSearch {
 public:
  DeltaSearch(std::span<const double> q, const Covering& cov, double threshold, std::size_t keep)
      : q_(q.begin(), q.end()), cov_(cov), threshold_(threshold), keep_(keep) {
    const double big = std::max(std::abs(cov.lower()), std::abs(cov.upper()));
    const double h = cov.fineness();
    for (std::size_t k = 1; k < q_.size(); ++k) {
      slack_ += std::abs(q_[k]) * (ipow(big + h, static_cast<int>(k)) - ipow(big, static_cast<int>(k)));
    }
    slack_ *= 1.0 + 1e-12;
    work_.resize(q_.size());
  }

  void run(bool prune) {
    if (!prune) {
      leaf(0, cov_.size() - 1);
      return;
    }
    visit(0, cov_.size() - 1, -std::numeric_limits<double>::infinity());
  }

  double best() const { return best_; }
  Candidate best_candidate() const { return best_at_; }
  std::vector<Candidate> kept() {
    std::vector<Candidate> out;
    while (!heap_.empty()) {
      out.push_back(heap_.top());
      heap_.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  // Lower bound for all vertex values of segments first..last.
  double block_bound(std::size_t first, std::size_t last) {
    const double x0 = cov_.left(first);
    const double x1 = cov_.left(last);
    const double mid = 0.5 * (x0 + x1);
    const double r = 0.5 * (x1 - x0);
    work_ = q_;
    taylor_shift(work_, mid);
    double lb = work_[0];
    double rp = 1.0;
    for (std::size_t j = 1; j < work_.size(); ++j) {
      rp *= r;
      lb -= std::abs(work_[j]) * rp;
    }
    return lb - slack_;
  }

  void visit(std::size_t first, std::size_t last, double bound) {
    if (bound >= best_) return;
    if (last - first + 1 <= kLeafSegments) {
      leaf(first, last);
      return;
    }
    const std::size_t mid = first + (last - first) / 2;
    const double lb_left = block_bound(first, mid);
    const double lb_right = block_bound(mid + 1, last);
    if (lb_left <= lb_right) {
      visit(first, mid, lb_left);
      visit(mid + 1, last, lb_right);
    } else {
      visit(mid + 1, last, lb_right);
      visit(first, mid, lb_left);
    }
  }

  void leaf(std::size_t first, std::size_t last) {
    for (std::size_t s = first; s <= last; ++s) {
      const double l = cov_.left(s);
      const double h = cov_.left(s + 1) - l;
      work_ = q_;
      taylor_shift(work_, l);
      double partial = 0.0;
      double hp = 1.0;
      for (std::size_t i = 0; i < work_.size(); ++i) {
        partial += work_[i] * hp;
        hp *= h;
        const Candidate cand{partial, s, static_cast<int>(i)};
        if (partial < best_ || (partial == best_ && cand < best_at_)) {
          best_ = partial;
          best_at_ = cand;
        }
        if (partial < threshold_ && keep_ > 0) {
          if (heap_.size() < keep_) {
            heap_.push(cand);
          } else if (cand < heap_.top()) {
            heap_.pop();
            heap_.push(cand);
          }
        }
      }
    }
  }

  std::vector<double> q_;
  const Covering& cov_;
  double threshold_;
  std::size_t keep_;
  double slack_ = 0.0;
  std::vector<double> work_;
  double best_ = std::numeric_limits<double>::infinity();
  Candidate best_at_{std::numeric_limits<double>::infinity(), 0, 0};
  std::priority_queue<Candidate> heap_;
};

// Vertices s * Phi^I u^i of (shifted) chains, for every segment I and every
// scale s, without materializing them.
class ChainSource final : public VertexSource {
 public:
  ChainSource(int degree, Covering covering, std::vector<double> scales)
      : d_(degree), cov_(std::move(covering)) {
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
    for (double s : scales) {
      if (s == 0.0) {
        has_zero_ = true;
      } else {
        scales_.push_back(s);
      }
    }
  }

  std::size_t dim() const override { return static_cast<std::size_t>(d_) + 1; }
  const Covering* covering() const override { return &cov_; }

  std::vector<double> vertex(std::size_t segment, int order, double scale) const {
    const Interval seg = cov_.segment(segment);
    const Matrix delta = delta_vertices(seg.lo, seg.hi, d_);
    std::vector<double> w = delta[static_cast<std::size_t>(order)];
    for (double& x : w) x *= scale;
    return w;
  }

  void seed(Matrix& out) const override {
    if (has_zero_) out.emplace_back(dim(), 0.0);
    const std::size_t m = std::min(cov_.size(), kSeedSegments);
    std::vector<std::size_t> segs;
    for (std::size_t k = 0; k < m; ++k) {
      segs.push_back(m == 1 ? 0 : k * (cov_.size() - 1) / (m - 1));
    }
    segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
    for (double s : scales_) {
      for (std::size_t seg : segs) {
        for (int i = 0; i <= d_; ++i) out.push_back(vertex(seg, i, s));
      }
    }
  }

  double lowest(std::span<const double> c, double threshold, std::size_t k,
                Matrix& out) const override {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<Candidate, double>> found;  // candidate, scale
    if (has_zero_) {
      best = 0.0;
      if (0.0 < threshold) found.push_back({Candidate{0.0, 0, 0}, 0.0});
    }
    for (double s : scales_) {
      std::vector<double> q(c.begin(), c.end());
      for (double& x : q) x *= s;
      DeltaSearch search(q, cov_, threshold, k);
      search.run(true);
      best = std::min(best, search.best());
      for (const auto& cand : search.kept()) found.emplace_back(cand, s);
    }
    std::sort(found.begin(), found.end());
    for (std::size_t i = 0; i < std::min(k, found.size()); ++i) {
      const auto& [cand, s] = found[i];
      out.push_back(vertex(std::get<1>(cand), std::get<2>(cand), s));
    }
    return best;
  }

 private:
  int d_;
  Covering cov_;
  std::vector<double> scales_;
  bool has_zero_ = false;
};

struct SpSolution {
  std::vector<double> c;
  double delta = 0.0;
  double distance = 0.0;
};

// Solves max delta - <c, v> s.t. <c, w> >= delta for all vertices w and
// c in [-1, 1] through its dual, the l1 projection
//   min sum(s+ + s-)  s.t.  sum_i lambda_i w_i + s+ - s- = v, sum lambda = 1,
// whose row duals are (-c, delta). Vertices enter as columns on demand.
SpSolution solve_sp(const VertexSource& source, std::span<const double> v) {
  const std::size_t n = source.dim();
  if (v.size() != n) throw std::invalid_argument("point does not match pattern size");
  Matrix columns;
  source.seed(columns);
  const std::size_t batch = 2 * (n + 1);
  lp::LpOptions options;
  options.row_generation = false;
  SpSolution best;
  double best_gap = std::numeric_limits<double>::infinity();
  std::size_t stalled = 0;
  for (std::size_t round = 0; round < kMaxSeparationRounds; ++round) {
    const std::size_t m = columns.size();
    lp::LinearProgram prog(m + 2 * n, lp::Sense::kMinimize);
    std::vector<double> obj(m + 2 * n, 0.0);
    std::fill(obj.begin() + static_cast<std::ptrdiff_t>(m), obj.end(), 1.0);
    prog.set_objective(obj);
    std::vector<double> row(m + 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) row[i] = columns[i][k];
      row[m + k] = 1.0;
      row[m + n + k] = -1.0;
      prog.add_row(row, lp::Relation::kEqual, v[k]);
    }
    std::fill(row.begin(), row.end(), 0.0);
    std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m), 1.0);
    prog.add_row(row, lp::Relation::kEqual, 1.0);

    const auto out = lp::solve_lp(prog, options);
    if (out.status != lp::LpStatus::kOptimal) {
      throw std::runtime_error("separation LP did not reach an optimum");
    }
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = std::clamp(-out.duals[k], -1.0, 1.0);
    const double delta = out.duals[n];
    Matrix fresh;
    const double threshold = delta - 1e-12 * (1.0 + std::abs(delta));
    const double low = source.lowest(c, threshold, batch, fresh);
    double cv = 0.0;
    for (std::size_t k = 0; k < n; ++k) cv += c[k] * v[k];
    // low - <c, v> is the violation of a valid cut, so it bounds the distance
    // from below; the restricted projection bounds it from above.
    const double violation = low - cv;
    if (violation > best.distance || best.c.empty()) {
      best.c = c;
      best.delta = low;
      best.distance = std::max(0.0, violation);
    }
    const double gap = std::max(0.0, out.objective) - best.distance;
    if (fresh.empty() || gap <= kSeparationGap * (1.0 + std::abs(out.objective))) return best;
    // Near-parallel vertices can leave a gap at rounding level that no
    // column closes; the best cut so far is valid either way.
    if (gap < best_gap) {
      best_gap = gap;
      stalled = 0;
    } else if (++stalled >= kStallRounds) {
      return best;
    }
    columns.insert(columns.end(), fresh.begin(), fresh.end());
  }
  throw std::runtime_error("separation column generation did not converge");
}

std::optional<Cut> make_cut(const std::vector<ExponentVector>& elements, const SpSolution& sol) {
  if (!(sol.distance > kCutThreshold)) return std::nullopt;
  Cut cut;
  for (std::size_t j = 0; j < elements.size(); ++j) cut.coeffs.emplace(elements[j], sol.c[j]);
  cut.offset = sol.delta;
  cut.distance = sol.distance;
  return cut;
}

Covering chain_covering(const Interval& range, int d, const SeparationConfig& config,
                        double scale) {
  if (!(range.lo < range.hi)) throw std::logic_error("degenerate chain range");
  if (config.covering.kind == CoveringSpec::Kind::kEqual) {
    return covering_equal(range.lo, range.hi, config.covering.count);
  }
  // A scaled body needs a proportionally finer covering.
  const double eps = config.covering.tolerance / std::max(scale, 1e-300);
  return covering_for_tolerance(range.lo, range.hi, d, eps);
}

void check_covering(const Covering& covering, const Interval& range) {
  const double tol = 1e-12 * (1.0 + std::abs(range.lo) + std::abs(range.hi));
  if (std::abs(covering.lower() - range.lo) > tol || std::abs(covering.upper() - range.hi) > tol) {
    throw std::invalid_argument("covering does not span the chain range");
  }
}

}  // namespace

std::optional<Cut> separate_singleton(const ExponentVector& alpha, double value,
                                      const BoxDomain& box) {
  const Interval r = monomial_bounds(alpha, box);
  Cut cut;
  if (value < r.lo) {
    cut.coeffs.emplace(alpha, 1.0);
    cut.offset = r.lo;
    cut.distance = r.lo - value;
  } else if (value > r.hi) {
    cut.coeffs.emplace(alpha, -1.0);
    cut.offset = -r.hi;
    cut.distance = value - r.hi;
  } else {
    return std::nullopt;
  }
  if (!(cut.distance > kCutThreshold)) return std::nullopt;
  return cut;
}

std::optional<Cut> separate_multilinear(const ExponentVector& alpha, std::span<const double> v,
                                        const BoxDomain& box) {
  const Pattern ml = Pattern::multilinear(alpha);
  ExplicitSource source(ml_vertex_set(alpha, box));
  return make_cut(ml.elements(), solve_sp(source, v));
}

std::optional<Cut> separate_chain(const ExponentVector& gamma, int d, std::span<const double> v,
                                  const BoxDomain& box, const Covering& covering) {
  const Pattern ch = Pattern::chain(gamma, d);
  check_covering(covering, monomial_bounds(gamma, box));
  ChainSource source(d, covering, {1.0});
  return make_cut(ch.elements(), solve_sp(source, v));
}

std::optional<Cut> separate_shifted_chain(const ExponentVector& eta, const ExponentVector& gamma,
                                          int d, std::span<const double> v, const BoxDomain& box,
                                          const Covering& covering) {
  const Pattern sc = Pattern::shifted_chain(eta, gamma, d);
  check_covering(covering, monomial_bounds(gamma, box));
  const Interval s = monomial_bounds(eta, box);
  ChainSource source(d, covering, {s.lo, s.hi});
  return make_cut(sc.elements(), solve_sp(source, v));
}

PatternSeparator::PatternSeparator(Pattern pattern, const BoxDomain& box,
                                   const SeparationConfig& config)
    : pattern_(std::move(pattern)) {
  if (pattern_.dimension() != box.dimension()) throw std::invalid_argument("dimension mismatch");
  struct Builder {
    PatternSeparator& self;
    const BoxDomain& box;
    const SeparationConfig& config;

    void operator()(const SingletonParams& p) {
      self.singleton_range_ = monomial_bounds(p.alpha, box);
    }
    void operator()(const MultilinearParams& p) {
      self.source_ = std::make_unique<ExplicitSource>(ml_vertex_set(p.alpha, box));
    }
    void operator()(const ChainParams& p) { chain(p.gamma, p.degree); }
    void operator()(const ShiftedChainParams& p) {
      const Interval range = monomial_bounds(p.gamma, box);
      const Interval s = monomial_bounds(p.eta, box);
      const double kappa = std::max(std::abs(s.lo), std::abs(s.hi));
      self.source_ = std::make_unique<ChainSource>(
          p.degree, chain_covering(range, p.degree, config, kappa), std::vector<double>{s.lo, s.hi});
    }
    void operator()(const TruncatedSubmonoidParams& p) {
      if (p.generators.size() != 1) {
        throw PatternUnsupported("truncated submonoids with more than one generator are not supported");
      }
      // One generator: the pattern is the chain CH(g, L).
      const int degree = static_cast<int>(self.pattern_.elements().size()) - 1;
      chain(p.generators[0], degree);
    }
    void chain(const ExponentVector& gamma, int degree) {
      const Interval range = monomial_bounds(gamma, box);
      self.source_ = std::make_unique<ChainSource>(
          degree, chain_covering(range, degree, config, 1.0), std::vector<double>{1.0});
    }
  };
  std::visit(Builder{*this, box, config}, pattern_.params());
}

PatternSeparator::~PatternSeparator() = default;
PatternSeparator::PatternSeparator(PatternSeparator&&) noexcept = default;
PatternSeparator& PatternSeparator::operator=(PatternSeparator&&) noexcept = default;

const Covering* PatternSeparator::covering() const {
  return source_ ? source_->covering() : nullptr;
}

std::optional<Cut> PatternSeparator::separate(const MomentPoint& v) const {
  const auto& elements = pattern_.elements();
  if (singleton_range_) {
    const ExponentVector& alpha = elements.front();
    const double value = v.value(alpha);
    Cut cut;
    if (value < singleton_range_->lo) {
      cut.coeffs.emplace(alpha, 1.0);
      cut.offset = singleton_range_->lo;
      cut.distance = singleton_range_->lo - value;
    } else if (value > singleton_range_->hi) {
      cut.coeffs.emplace(alpha, -1.0);
      cut.offset = -singleton_range_->hi;
      cut.distance = value - singleton_range_->hi;
    } else {
      return std::nullopt;
    }
    if (!(cut.distance > kCutThreshold)) return std::nullopt;
    return cut;
  }
  std::vector<double> local;
  local.reserve(elements.size());
  for (const auto& alpha : elements) local.push_back(v.value(alpha));
  return make_cut(elements, solve_sp(*source_, local));
}

std::optional<Cut> separate(const Pattern& pattern, const MomentPoint& v, const BoxDomain& box,
                            const SeparationConfig& config) {
  return PatternSeparator(pattern, box, config).separate(v);
}

DeltaMinimum delta_vertex_minimum(std::span<const double> c, double scale,
                                  const Covering& covering, bool prune) {
  std::vector<double> q(c.begin(), c.end());
  for (double& x : q) x *= scale;
  DeltaSearch search(q, covering, -std::numeric_limits<double>::infinity(), 0);
  search.run(prune);
  const auto [value, segment, order] = search.best_candidate();
  return {value, segment, order};
}

}  // namespace patrelax
