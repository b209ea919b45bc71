#include "patrelax/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace patrelax {

namespace {

constexpr int kDenseCap = 7;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

long long parse_int(std::string_view text, std::string_view what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

ExponentSet from_list(std::initializer_list<ExponentVector> list) { return {list.begin(), list.end()}; }

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExponentSet dense_set(std::size_t n, int d) {
  if (n == 0) throw std::invalid_argument("dense set needs at least one variable");
  if (d < 0) throw std::invalid_argument("dense set degree must be nonnegative");
  ExponentSet out;
  std::vector<int> e(n, 0);
  while (true) {
    int deg = 0;
    for (int v : e) deg += v;
    if (deg <= d) out.insert(ExponentVector(e));
    std::size_t i = 0;
    while (i < n && ++e[i] > d) e[i++] = 0;
    if (i == n) break;
  }
  return out;
}

ExponentSet random_sparse_set(std::size_t n, int d, std::size_t count, std::uint64_t seed) {
  const ExponentSet dense = dense_set(n, d);
  std::vector<ExponentVector> pool;
  for (const auto& a : dense) {
    if (!a.is_zero()) pool.push_back(a);
  }
  if (count == 0 || count > pool.size()) {
    throw std::invalid_argument("random set size must be between 1 and " + std::to_string(pool.size()));
  }
  // Partial Fisher-Yates with plain modular draws, so the set is the same on
  // every standard library.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count)};
}

NamedSet named_set(std::string_view name, bool allow_large) {
  NamedSet s;
  s.name = std::string(name);
  if (name == "intro") {
    s.dimension = 2;
    s.exponents = from_list({{0, 2}, {1, 1}, {2, 3}, {2, 4}, {4, 0}, {5, 5}});
    return s;
  }
  if (name == "A2-like") {
    s.dimension = 2;
    s.exponents = from_list({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}});
    s.reconstruction = true;
    return s;
  }
  if (name == "A5-like") {
    s.dimension = 2;
    s.exponents = from_list({{3, 0}, {3, 1}, {3, 2}, {3, 3}, {4, 0}, {4, 1}, {4, 2}, {4, 3}, {4, 4}});
    s.reconstruction = true;
    return s;
  }
  const auto parts = split(name, ':');
  if (parts[0] == "dense" && parts.size() == 3) {
    const auto n = parse_int(parts[1], "variable count");
    const auto d = parse_int(parts[2], "degree");
    if (n < 1 || n > 4) throw std::invalid_argument("dense sets support 1 to 4 variables");
    if (d < 1) throw std::invalid_argument("dense set degree must be positive");
    if (n >= 3 && d > kDenseCap) {
      if (!allow_large) {
        throw std::invalid_argument("dense sets in " + std::to_string(n) +
                                    " variables are capped at degree 7; pass allow_large");
      }
      std::cerr << "warning: " << name << " is large; expect long runtimes\n";
    }
    s.dimension = static_cast<std::size_t>(n);
    s.exponents = dense_set(s.dimension, static_cast<int>(d));
    return s;
  }
  if (parts[0] == "random" && parts.size() == 5) {
    const auto n = parse_int(parts[1], "variable count");
    const auto d = parse_int(parts[2], "degree");
    const auto k = parse_int(parts[3], "set size");
    const auto seed = parse_int(parts[4], "seed");
    if (n < 1 || n > 4) throw std::invalid_argument("random sets support 1 to 4 variables");
    if (d < 1 || k < 1 || seed < 0) throw std::invalid_argument("bad random set parameters");
    s.dimension = static_cast<std::size_t>(n);
    s.exponents = random_sparse_set(s.dimension, static_cast<int>(d), static_cast<std::size_t>(k),
                                    static_cast<std::uint64_t>(seed));
    s.reconstruction = true;
    return s;
  }
  throw std::invalid_argument("unknown exponent set '" + std::string(name) + "'");
}

std::vector<std::vector<double>> sample_coefficients(const ExponentSet& exponents,
                                                     std::uint64_t seed, std::size_t count) {
  if (exponents.empty()) throw std::invalid_argument("exponent set is empty");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out(count, std::vector<double>(exponents.size()));
  for (auto& v : out) {
    for (double& x : v) x = 2.0 * unit_uniform(rng) - 1.0;
  }
  return out;
}

SparsePolynomial polynomial_from(const ExponentSet& exponents, std::span<const double> coeffs,
                                 std::size_t dimension) {
  if (coeffs.size() != exponents.size()) throw std::invalid_argument("coefficient count mismatch");
  SparsePolynomial f(dimension);
  std::size_t i = 0;
  for (const auto& alpha : exponents) {
    if (alpha.size() != dimension) throw std::invalid_argument("exponent dimension mismatch");
    f.add_term(alpha, coeffs[i++]);
  }
  return f;
}

Combination Combination::parse(std::string_view text) {
  Combination c;
  if (text == "single") return c;
  for (auto tag : split(text, '+')) {
    const PatternType t = parse_pattern_type(tag);
    if (std::find(c.types.begin(), c.types.end(), t) != c.types.end()) {
      throw std::invalid_argument("pattern type repeated in '" + std::string(text) + "'");
    }
    c.types.push_back(t);
  }
  return c;
}

std::string Combination::label() const {
  if (types.empty()) return "single";
  std::string out;
  for (const auto t : types) {
    if (!out.empty()) out += '+';
    out += pattern_type_tag(t);
  }
  return out;
}

PatternFamily Combination::family_for(const ExponentSet& exponents) const {
  if (types.empty()) return singleton_family(exponents);
  return generate_patterns(exponents, types).family;
}

WidthBound width_bound(const PatternFamily& family, const SparsePolynomial& f,
                       const BoxDomain& box, const RelaxationSettings& settings) {
  const RelaxationInstance lo{f, family, box, settings.epsilon, settings.separation};
  const RelaxationInstance hi{-f, family, box, settings.epsilon, settings.separation};
  const SolveReport rlo = solve_relaxation(lo, settings.solve);
  const SolveReport rhi = solve_relaxation(hi, settings.solve);
  WidthBound w;
  w.lower = rlo.lower_bound;
  w.upper = -rhi.lower_bound;
  w.width = w.upper - w.lower;
  w.iterations_min = std::min(rlo.iterations, rhi.iterations);
  w.iterations_max = std::max(rlo.iterations, rhi.iterations);
  w.cuts = rlo.cuts_added + rhi.cuts_added;
  w.timed_out = rlo.termination == Termination::kTimeBudget ||
                rhi.termination == Termination::kTimeBudget;
  return w;
}

double singleton_width(const SparsePolynomial& f, const BoxDomain& box) {
  return -singleton_bound(-f, box) - singleton_bound(f, box);
}

double nu(const PatternFamily& family, const SparsePolynomial& f, const BoxDomain& box,
          const RelaxationSettings& settings) {
  const double denom = singleton_width(f, box);
  if (!(denom > 0.0)) throw DegenerateInstance("singleton width is zero; f is constant on the box");
  return width_bound(family, f, box, settings).width / denom;
}

double quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxplotStats boxplot_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("box plot of empty data");
  std::sort(values.begin(), values.end());
  BoxplotStats s;
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  const double iqr = s.q3 - s.q1;
  const double fence_lo = s.q1 - 1.5 * iqr;
  const double fence_hi = s.q3 + 1.5 * iqr;
  s.lower_whisker = *std::find_if(values.begin(), values.end(), [&](double x) { return x >= fence_lo; });
  s.upper_whisker = *std::find_if(values.rbegin(), values.rend(), [&](double x) { return x <= fence_hi; });
  for (double x : values) {
    if (x < s.lower_whisker || x > s.upper_whisker) s.outliers.push_back(x);
  }
  return s;
}

BoxDomain ExperimentConfig::domain() const {
  if (box) return *box;
  return BoxDomain::unit(set.dimension);
}

std::size_t ExperimentResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.error.empty(); }));
}

std::size_t ExperimentResult::timeouts() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.timed_out; }));
}

void validate(const ExperimentConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("sample count must be at least 1");
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (config.set.exponents.empty()) throw std::invalid_argument("exponent set is empty");
  if (config.combinations.empty()) throw std::invalid_argument("no pattern combinations given");
  if (config.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (config.time_budget < 0.0) throw std::invalid_argument("time budget must be nonnegative");
  for (const auto& a : config.set.exponents) {
    if (a.size() != config.set.dimension) throw std::invalid_argument("exponent dimension mismatch");
  }
  if (config.domain().dimension() != config.set.dimension) {
    throw std::invalid_argument("box dimension does not match the exponent set");
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.config = config;
  const BoxDomain box = config.domain();
  const auto& A = config.set.exponents;
  const std::size_t ncomb = config.combinations.size();

  std::vector<PatternFamily> families;
  for (const auto& c : config.combinations) families.push_back(c.family_for(A));

  RelaxationSettings settings;
  settings.epsilon = config.epsilon;
  settings.separation.covering = config.covering;
  settings.solve.time_budget = config.time_budget;

  const auto coeffs = sample_coefficients(A, config.seed, config.samples);
  result.records.resize(config.samples * ncomb);

  auto run_instance = [&](std::size_t i) {
    const SparsePolynomial f = polynomial_from(A, coeffs[i], config.set.dimension);
    double denom = std::numeric_limits<double>::quiet_NaN();
    double nu_ref = std::numeric_limits<double>::quiet_NaN();
    std::string ref_error;
    try {
      denom = singleton_width(f, box);
      if (!(denom > 0.0)) throw DegenerateInstance("singleton width is zero");
      OracleConfig oc = config.oracle;
      oc.seed = config.oracle.seed + i;
      nu_ref = width_ref(f, box, oc) / denom;
    } catch (const std::exception& e) {
      ref_error = e.what();
    }
    for (std::size_t k = 0; k < ncomb; ++k) {
      InstanceRecord& r = result.records[i * ncomb + k];
      r.instance_id = i;
      r.set_name = config.set.name;
      r.combination = config.combinations[k].label();
      r.nu = std::numeric_limits<double>::quiet_NaN();
      r.nu_ref = nu_ref;
      const auto start = std::chrono::steady_clock::now();
      try {
        if (!(denom > 0.0)) throw DegenerateInstance(ref_error);
        const WidthBound w = width_bound(families[k], f, box, settings);
        r.nu = w.width / denom;
        r.iterations_min = w.iterations_min;
        r.iterations_max = w.iterations_max;
        r.cuts = w.cuts;
        r.timed_out = w.timed_out;
        if (!ref_error.empty()) r.error = "reference: " + ref_error;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      r.wall_ms = ms.count();
    }
  };

  const std::size_t workers = std::min(config.jobs, config.samples);
  if (workers <= 1) {
    for (std::size_t i = 0; i < config.samples; ++i) run_instance(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < config.samples; i = next++) run_instance(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t k = 0; k < ncomb; ++k) {
    CombinationSummary s;
    s.combination = config.combinations[k].label();
    s.family_size = families[k].size();
    std::vector<double> nus, refs;
    for (std::size_t i = 0; i < config.samples; ++i) {
      const auto& r = result.records[i * ncomb + k];
      if (!std::isnan(r.nu)) nus.push_back(r.nu);
      if (!std::isnan(r.nu_ref)) refs.push_back(r.nu_ref);
    }
    if (!nus.empty()) s.nu = boxplot_stats(nus);
    if (!refs.empty()) s.nu_ref = boxplot_stats(refs);
    result.summaries.push_back(std::move(s));
  }
  return result;
}

std::string_view prng_description() {
  return "std::mt19937_64 seeded with the experiment seed; u = (draw >> 11) * 2^-53; "
         "coefficient = 2u - 1, drawn in lexicographic exponent order, instance by instance";
}

std::string_view quantile_description() {
  return "linear interpolation between order statistics (Hyndman-Fan type 7); "
         "whiskers at the most extreme data within 1.5 IQR of the quartiles";
}

std::string results_csv(const ExperimentResult& result) {
  std::string out = "instance_id,set_name,combination,nu,nu_ref,iterations_min,iterations_max,cuts,wall_ms\n";
  for (const auto& r : result.records) {
    out += std::to_string(r.instance_id);
    out += ',';
    out += r.set_name;
    out += ',';
    out += r.combination;
    out += ',';
    out += format_real(r.nu);
    out += ',';
    out += format_real(r.nu_ref);
    out += ',';
    out += std::to_string(r.iterations_min);
    out += ',';
    out += std::to_string(r.iterations_max);
    out += ',';
    out += std::to_string(r.cuts);
    out += ',';
    if (result.config.timing) out += format_real(r.wall_ms);
    out += '\n';
  }
  return out;
}

namespace {

struct SvgScale {
  double lo, hi, x0, x1;
  double operator()(double v) const { return x0 + (v - lo) / (hi - lo) * (x1 - x0); }
};

void draw_box(std::ostringstream& svg, const BoxplotStats& s, const SvgScale& x, double y,
              const char* fill) {
  char buf[512];
  const double h = 24.0;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n"
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                x(s.lower_whisker), y, x(s.q1), y, x(s.q3), y, x(s.upper_whisker), y);
  svg << buf;
  for (double w : {s.lower_whisker, s.upper_whisker}) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", x(w),
                  y - h / 4, x(w), y + h / 4);
    svg << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\" stroke=\"black\"/>\n"
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\" stroke-width=\"2\"/>\n",
                x(s.q1), y - h / 2, std::max(x(s.q3) - x(s.q1), 0.5), h, fill, x(s.median), y - h / 2,
                x(s.median), y + h / 2);
  svg << buf;
  for (double o : s.outliers) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n",
                  x(o), y);
    svg << buf;
  }
}

}  // namespace

std::string boxplot_svg(const CombinationSummary& summary) {
  double lo = 0.0, hi = 1.0;
  for (const auto* s : {&summary.nu, &summary.nu_ref}) {
    if (!*s) continue;
    lo = std::min({lo, (*s)->lower_whisker, (*s)->q1});
    hi = std::max({hi, (*s)->upper_whisker, (*s)->q3});
    for (double o : (*s)->outliers) {
      lo = std::min(lo, o);
      hi = std::max(hi, o);
    }
  }
  const SvgScale x{lo, hi, 90.0, 610.0};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"170\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"640\" height=\"170\" fill=\"white\"/>\n";
  svg << "<text x=\"10\" y=\"18\">" << summary.combination << "</text>\n";
  char buf[256];
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"130\" x2=\"%.2f\" y2=\"135\" stroke=\"black\"/>\n"
                  "<text x=\"%.2f\" y=\"150\" text-anchor=\"middle\">%.3g</text>\n",
                  x(v), x(v), x(v), v);
    svg << buf;
  }
  svg << "<line x1=\"90\" y1=\"130\" x2=\"610\" y2=\"130\" stroke=\"black\"/>\n";
  if (summary.nu) {
    svg << "<text x=\"10\" y=\"59\">nu</text>\n";
    draw_box(svg, *summary.nu, x, 55.0, "#9ecae1");
  }
  if (summary.nu_ref) {
    svg << "<text x=\"10\" y=\"104\">nu_ref</text>\n";
    draw_box(svg, *summary.nu_ref, x, 100.0, "#d9d9d9");
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string slug(std::string_view label) {
  std::string out;
  for (char c : label) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

}  // namespace patrelax
