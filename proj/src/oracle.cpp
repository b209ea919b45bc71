#include "patrelax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "patrelax/lp.hpp"

namespace patrelax {

namespace {

constexpr std::size_t kMaxOracleDimension = 4;
constexpr int kGoldenIterations = 60;
constexpr double kInsideTolerance = 1e-8;

// f grouped by all but the last coordinate: f = sum_prefix x^prefix * g_prefix(x_last).
struct SplitPolynomial {
  std::vector<std::vector<int>> prefixes;
  std::vector<std::vector<double>> last_coeffs;  // dense in the last coordinate
};

SplitPolynomial split_last(const SparsePolynomial& f) {
  const std::size_t n = f.dimension();
  std::map<std::vector<int>, std::vector<double>> groups;
  for (const auto& [alpha, c] : f.terms()) {
    std::vector<int> prefix(alpha.entries().begin(), alpha.entries().end() - 1);
    auto& g = groups[prefix];
    const auto k = static_cast<std::size_t>(alpha[n - 1]);
    if (g.size() <= k) g.resize(k + 1, 0.0);
    g[k] += c;
  }
  SplitPolynomial s;
  for (auto& [p, g] : groups) {
    s.prefixes.push_back(p);
    s.last_coeffs.push_back(std::move(g));
  }
  return s;
}

class Polisher {
 public:
  Polisher(const SparsePolynomial& f, const BoxDomain& box) : f_(f), box_(box) {}

  // Coordinate sweeps with golden-section line searches on shrinking windows.
  double polish(std::vector<double>& x, double radius, int steps) const {
    double fx = eval_poly(f_, x);
    const std::size_t n = x.size();
    for (int step = 0; step < steps && radius > 1e-13; ++step) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        const double lo = std::max(box_.lower()[i], x[i] - radius * box_.axis(i).width());
        const double hi = std::min(box_.upper()[i], x[i] + radius * box_.axis(i).width());
        const double keep = x[i];
        const double t = golden(x, i, lo, hi);
        x[i] = t;
        const double ft = eval_poly(f_, x);
        if (ft < fx) {
          fx = ft;
          improved = true;
        } else {
          x[i] = keep;
        }
      }
      if (!improved) radius *= 0.5;
    }
    return fx;
  }

 private:
  double golden(std::vector<double>& x, std::size_t i, double lo, double hi) const {
    const double keep = x[i];
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    auto at = [&](double t) {
      x[i] = t;
      return eval_poly(f_, x);
    };
    double fc = at(c), fd = at(d);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        fc = at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        fd = at(d);
      }
    }
    // Endpoints can beat the interior on non-unimodal restrictions.
    double best_t = fc < fd ? c : d;
    double best_f = std::min(fc, fd);
    for (double t : {lo, hi}) {
      const double ft = at(t);
      if (ft < best_f) {
        best_f = ft;
        best_t = t;
      }
    }
    x[i] = keep;
    return best_t;
  }

  const SparsePolynomial& f_;
  const BoxDomain& box_;
};

}  // namespace

OracleMinimum grid_min(const SparsePolynomial& f, const BoxDomain& box,
                       const OracleConfig& config) {
  const std::size_t n = box.dimension();
  if (f.dimension() != n) throw std::invalid_argument("dimension mismatch");
  if (n > kMaxOracleDimension) throw OracleSizeError("grid oracle supports at most 4 variables");
  if (config.grid_points < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  if (config.restarts < 0) throw std::invalid_argument("restarts must be nonnegative");
  const std::size_t g = config.grid_points;

  std::vector<std::vector<double>> axis(n, std::vector<double>(g));
  for (std::size_t i = 0; i < n; ++i) {
    const double a = box.lower()[i], b = box.upper()[i];
    for (std::size_t k = 0; k < g; ++k) {
      axis[i][k] = k + 1 == g ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(g - 1);
    }
  }

  OracleMinimum best{std::numeric_limits<double>::infinity(), std::vector<double>(n)};
  if (f.empty()) {
    best.value = 0.0;
    best.argmin = box.lower();
    return best;
  }

  const SplitPolynomial split = split_last(f);
  std::size_t max_last = 0;
  for (const auto& c : split.last_coeffs) max_last = std::max(max_last, c.size());
  // Powers of the last coordinate over its grid.
  std::vector<std::vector<double>> last_pow(g, std::vector<double>(max_last));
  for (std::size_t k = 0; k < g; ++k) {
    double p = 1.0;
    for (std::size_t e = 0; e < max_last; ++e) {
      last_pow[k][e] = p;
      p *= axis[n - 1][k];
    }
  }

  std::vector<std::size_t> idx(n - 1, 0);
  std::vector<double> coeffs(max_last);
  std::vector<double> prefix_x(n - 1);
  while (true) {
    for (std::size_t i = 0; i + 1 < n; ++i) prefix_x[i] = axis[i][idx[i]];
    std::fill(coeffs.begin(), coeffs.end(), 0.0);
    for (std::size_t p = 0; p < split.prefixes.size(); ++p) {
      double m = 1.0;
      for (std::size_t i = 0; i + 1 < n; ++i) m *= ipow(prefix_x[i], split.prefixes[p][i]);
      const auto& c = split.last_coeffs[p];
      for (std::size_t e = 0; e < c.size(); ++e) coeffs[e] += m * c[e];
    }
    for (std::size_t k = 0; k < g; ++k) {
      double v = 0.0;
      for (std::size_t e = 0; e < max_last; ++e) v += coeffs[e] * last_pow[k][e];
      if (v < best.value) {
        best.value = v;
        for (std::size_t i = 0; i + 1 < n; ++i) best.argmin[i] = prefix_x[i];
        best.argmin[n - 1] = axis[n - 1][k];
      }
    }
    std::size_t i = 0;
    while (i + 1 < n && ++idx[i] == g) idx[i++] = 0;
    if (i + 1 >= n) break;
  }

  // The grid value is recomputed directly so that the reported pair agrees.
  best.value = eval_poly(f, best.argmin);
  const Polisher polisher(f, box);
  std::vector<double> x = best.argmin;
  const double spacing = 2.0 / static_cast<double>(g - 1);
  double fx = polisher.polish(x, spacing, config.polish_steps);
  if (fx < best.value) best = {fx, x};

  std::mt19937_64 rng(config.seed);
  for (int r = 0; r < config.restarts; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = box.lower()[i] + box.axis(i).width() * unit_uniform(rng);
    }
    fx = polisher.polish(x, 0.5, config.polish_steps);
    if (fx < best.value) best = {fx, x};
  }
  return best;
}

double width_ref(const SparsePolynomial& f, const BoxDomain& box, const OracleConfig& config) {
  const double lo = grid_min(f, box, config).value;
  const double hi = -grid_min(-f, box, config).value;
  return std::max(0.0, hi - lo);
}

HullDistance hull_membership(const std::vector<std::vector<double>>& points,
                             std::span<const double> v) {
  if (points.empty()) throw std::invalid_argument("hull needs at least one point");
  const std::size_t m = points.size();
  const std::size_t d = v.size();
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("point dimension mismatch");
  }
  // Variables: lambda (m), s_plus (d), s_minus (d).
  lp::LinearProgram prog(m + 2 * d);
  std::vector<double> obj(m + 2 * d, 0.0);
  for (std::size_t k = 0; k < 2 * d; ++k) obj[m + k] = 1.0;
  prog.set_objective(obj);
  std::vector<double> row(m + 2 * d, 0.0);
  for (std::size_t i = 0; i < m; ++i) row[i] = 1.0;
  prog.add_row(row, lp::Relation::kEqual, 1.0);
  for (std::size_t k = 0; k < d; ++k) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) row[i] = points[i][k];
    row[m + k] = 1.0;
    row[m + d + k] = -1.0;
    prog.add_row(row, lp::Relation::kEqual, v[k]);
  }
  lp::LpOptions options;
  options.row_generation = false;
  const auto out = lp::solve_lp(prog, options);
  if (out.status != lp::LpStatus::kOptimal) throw std::runtime_error("hull projection LP failed");
  HullDistance h;
  h.l1_distance = std::max(0.0, out.objective);
  h.inside = h.l1_distance <= kInsideTolerance;
  h.weights.assign(out.x.begin(), out.x.begin() + static_cast<std::ptrdiff_t>(m));
  return h;
}

}  // namespace patrelax
