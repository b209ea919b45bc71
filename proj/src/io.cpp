#include "patrelax/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

namespace patrelax {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  return j.get<double>();
}

long long integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<long long>();
}

ExponentVector exponent(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) fail("exponent must be an array of " + std::to_string(n) + " integers");
  std::vector<int> e;
  for (const auto& x : j) {
    const long long v = integer(x, "exponent entry");
    if (v < 0 || v > 1000) fail("exponent entries must lie in [0, 1000]");
    e.push_back(static_cast<int>(v));
  }
  return ExponentVector(std::move(e));
}

BoxDomain parse_box(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) fail("box must list " + std::to_string(n) + " intervals");
  std::vector<double> lo, hi;
  for (const auto& iv : j) {
    if (!iv.is_array() || iv.size() != 2) fail("box intervals must be [a, b] pairs");
    lo.push_back(number(iv[0], "box bound"));
    hi.push_back(number(iv[1], "box bound"));
  }
  try {
    return BoxDomain(std::move(lo), std::move(hi));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

std::size_t dimension(const Json& j) {
  const long long n = integer(require(j, "n"), "n");
  if (n < 1 || n > 64) fail("n must lie in [1, 64]");
  return static_cast<std::size_t>(n);
}

CoveringSpec covering(const Json& j) {
  if (!j.is_string()) fail("covering must be a string");
  try {
    return CoveringSpec::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

Combination combination(const Json& j) {
  try {
    if (j.is_string()) return Combination::parse(j.get<std::string>());
    if (j.is_array()) {
      std::string joined;
      for (const auto& t : j) {
        if (!t.is_string()) fail("pattern types must be strings");
        if (!joined.empty()) joined += '+';
        joined += t.get<std::string>();
      }
      return Combination::parse(joined.empty() ? "single" : joined);
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  fail("types must be a string or a list of strings");
}

class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : s_(text) {}

  Pattern parse() {
    Pattern p = pattern();
    skip();
    if (pos_ != s_.size()) error("trailing characters");
    return p;
  }

 private:
  Pattern pattern() {
    skip();
    if (accept("{")) {
      const ExponentVector a = vec();
      expect("}");
      return Pattern::singleton(a);
    }
    if (accept("ML(")) {
      const ExponentVector a = vec();
      expect(")");
      return Pattern::multilinear(a);
    }
    if (accept("CH(")) {
      const auto [g, d] = chain_args();
      return Pattern::chain(g, d);
    }
    if (accept("TS(")) {
      expect("[");
      std::vector<ExponentVector> gens{vec()};
      while (accept(",")) gens.push_back(vec());
      expect("]");
      expect(",");
      const ExponentVector corner = vec();
      expect(")");
      return Pattern::truncated_submonoid(std::move(gens), corner);
    }
    const ExponentVector eta = vec();
    expect("+");
    expect("CH(");
    const auto [g, d] = chain_args();
    return Pattern::shifted_chain(eta, g, d);
  }

  std::pair<ExponentVector, int> chain_args() {
    const ExponentVector g = vec();
    expect(",");
    const int d = num();
    expect(")");
    return {g, d};
  }

  ExponentVector vec() {
    expect("(");
    std::vector<int> e{num()};
    while (accept(",")) e.push_back(num());
    expect(")");
    return ExponentVector(std::move(e));
  }

  int num() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 4) error("expected a small nonnegative integer");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) error("expected '" + std::string(tok) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail("bad pattern '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

Problem parse_problem(const Json& j) {
  Problem p;
  const std::size_t n = dimension(j);
  p.name = j.value("name", std::string());
  p.box = j.contains("box") ? parse_box(j.at("box"), n) : BoxDomain::unit(n);
  const Json& terms = require(j, "terms");
  if (!terms.is_array()) fail("terms must be an array");
  p.f = SparsePolynomial(n);
  for (const auto& t : terms) {
    p.f.add_term(exponent(require(t, "exp"), n), number(require(t, "coef"), "coef"));
  }
  if (j.contains("patterns")) {
    PatternFamily family;
    for (const auto& s : j.at("patterns")) {
      if (!s.is_string()) fail("patterns must be strings");
      const Pattern pat = parse_pattern(s.get<std::string>());
      if (pat.dimension() != n) fail("pattern " + s.get<std::string>() + " has the wrong dimension");
      family.add_pattern(pat);
    }
    p.family = std::move(family);
  }
  if (j.contains("types")) p.types = combination(j.at("types"));
  if (j.contains("epsilon")) {
    const double eps = number(j.at("epsilon"), "epsilon");
    if (!(eps > 0.0)) fail("epsilon must be positive");
    p.epsilon = eps;
  }
  if (j.contains("covering")) p.covering = covering(j.at("covering"));
  return p;
}

NamedSet parse_exponent_set(const Json& j) {
  NamedSet s;
  s.dimension = dimension(j);
  s.name = j.value("name", std::string("inline"));
  s.reconstruction = j.value("reconstruction", false);
  const Json& list = require(j, "exponents");
  if (!list.is_array() || list.empty()) fail("exponents must be a nonempty array");
  for (const auto& e : list) s.exponents.insert(exponent(e, s.dimension));
  return s;
}

Pattern parse_pattern(std::string_view text) {
  try {
    return PatternParser(text).parse();
  } catch (const std::invalid_argument& e) {
    fail("bad pattern '" + std::string(text) + "': " + e.what());
  }
}

PointFile parse_point(const Json& j) {
  PointFile p;
  const Json& values = require(j, "values");
  if (!values.is_array() || values.empty()) fail("values must be a nonempty array");
  const std::size_t n = require(values[0], "exp").size();
  if (n == 0) fail("exponents must be nonempty");
  std::vector<ExponentVector> index;
  std::vector<double> vals;
  for (const auto& v : values) {
    index.push_back(exponent(require(v, "exp"), n));
    vals.push_back(number(require(v, "value"), "value"));
  }
  try {
    p.point = MomentPoint(std::move(index), std::move(vals));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (j.contains("box")) p.box = parse_box(j.at("box"), n);
  if (j.contains("covering")) p.covering = covering(j.at("covering"));
  return p;
}

ExperimentConfig parse_experiment(const Json& j) {
  ExperimentConfig c;
  const bool allow_large = j.value("allow_large", false);
  const Json& set = require(j, "set");
  try {
    if (set.is_string()) {
      c.set = named_set(set.get<std::string>(), allow_large);
    } else {
      c.set = parse_exponent_set(set);
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  const Json& combos = require(j, "combinations");
  if (!combos.is_array() || combos.empty()) fail("combinations must be a nonempty array");
  for (const auto& k : combos) c.combinations.push_back(combination(k));
  if (j.contains("samples")) {
    const long long s = integer(j.at("samples"), "samples");
    if (s < 1) fail("samples must be at least 1");
    c.samples = static_cast<std::size_t>(s);
  }
  if (j.contains("seed")) {
    const long long s = integer(j.at("seed"), "seed");
    if (s < 0) fail("seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("epsilon")) c.epsilon = number(j.at("epsilon"), "epsilon");
  if (j.contains("covering")) c.covering = covering(j.at("covering"));
  if (j.contains("box")) c.box = parse_box(j.at("box"), c.set.dimension);
  if (j.contains("time_budget")) c.time_budget = number(j.at("time_budget"), "time_budget");
  if (j.contains("jobs")) {
    const long long jobs = integer(j.at("jobs"), "jobs");
    if (jobs < 1) fail("jobs must be at least 1");
    c.jobs = static_cast<std::size_t>(jobs);
  }
  if (j.contains("oracle")) {
    const Json& o = j.at("oracle");
    if (o.contains("grid_points")) {
      const long long g = integer(o.at("grid_points"), "grid_points");
      if (g < 2) fail("grid_points must be at least 2");
      c.oracle.grid_points = static_cast<std::size_t>(g);
    }
    if (o.contains("polish_steps")) c.oracle.polish_steps = static_cast<int>(integer(o.at("polish_steps"), "polish_steps"));
    if (o.contains("restarts")) c.oracle.restarts = static_cast<int>(integer(o.at("restarts"), "restarts"));
    if (o.contains("seed")) c.oracle.seed = static_cast<std::uint64_t>(integer(o.at("seed"), "oracle seed"));
    if (c.oracle.restarts < 0 || c.oracle.polish_steps < 0) fail("oracle counts must be nonnegative");
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return c;
}

Json to_json(const ExponentVector& alpha) { return alpha.entries(); }

Json to_json(const Cut& cut) {
  Json coeffs = Json::array();
  for (const auto& [alpha, c] : cut.coeffs) coeffs.push_back({{"exp", to_json(alpha)}, {"coef", c}});
  return {{"pattern_index", cut.pattern_index},
          {"coeffs", coeffs},
          {"offset", cut.offset},
          {"distance", cut.distance}};
}

Json to_json(const PatternFamily& family) {
  Json patterns = Json::array();
  for (const auto& p : family.patterns()) {
    Json elements = Json::array();
    for (const auto& e : p.elements()) elements.push_back(to_json(e));
    patterns.push_back({{"pattern", p.describe()}, {"kind", kind_name(p.kind())}, {"elements", elements}});
  }
  Json cover = Json::array();
  for (const auto& e : family.cover()) cover.push_back(to_json(e));
  return {{"patterns", patterns}, {"cover", cover}};
}

Json to_json(const SolveReport& report) {
  Json trace = Json::array();
  for (const auto& t : report.trace) {
    trace.push_back({{"iteration", t.iteration},
                     {"bound", t.bound},
                     {"max_distance", t.max_distance},
                     {"cuts", t.cuts}});
  }
  Json point = Json::array();
  for (std::size_t k = 0; k < report.point.size(); ++k) {
    point.push_back({{"exp", to_json(report.point.index()[k])}, {"value", report.point.values()[k]}});
  }
  return {{"lower_bound", report.lower_bound},
          {"iterations", report.iterations},
          {"cuts_added", report.cuts_added},
          {"termination", termination_name(report.termination)},
          {"trace", trace},
          {"point", point}};
}

Json to_json(const BoxplotStats& s) {
  return {{"q1", s.q1},
          {"median", s.median},
          {"q3", s.q3},
          {"lower_whisker", s.lower_whisker},
          {"upper_whisker", s.upper_whisker},
          {"outliers", s.outliers}};
}

Json summary_json(const ExperimentResult& result) {
  const auto& c = result.config;
  Json combos = Json::array();
  for (const auto& s : result.summaries) {
    combos.push_back({{"combination", s.combination},
                      {"family_size", s.family_size},
                      {"nu", s.nu ? to_json(*s.nu) : Json()},
                      {"nu_ref", s.nu_ref ? to_json(*s.nu_ref) : Json()}});
  }
  Json failures = Json::array();
  Json timeouts = Json::array();
  for (const auto& r : result.records) {
    if (!r.error.empty()) {
      failures.push_back({{"instance_id", r.instance_id}, {"combination", r.combination}, {"error", r.error}});
    }
    if (r.timed_out) timeouts.push_back({{"instance_id", r.instance_id}, {"combination", r.combination}});
  }
  const BoxDomain box = c.domain();
  Json box_json = Json::array();
  for (std::size_t i = 0; i < box.dimension(); ++i) box_json.push_back({box.lower()[i], box.upper()[i]});
  Json exponents = Json::array();
  for (const auto& e : c.set.exponents) exponents.push_back(to_json(e));
  return {{"metadata",
           {{"set", c.set.name},
            {"reconstruction", c.set.reconstruction},
            {"exponents", exponents},
            {"box", box_json},
            {"samples", c.samples},
            {"seed", c.seed},
            {"epsilon", c.epsilon},
            {"covering", c.covering.to_string()},
            {"time_budget", c.time_budget},
            {"oracle",
             {{"grid_points", c.oracle.grid_points},
              {"polish_steps", c.oracle.polish_steps},
              {"restarts", c.oracle.restarts},
              {"seed", c.oracle.seed}}},
            {"prng", prng_description()},
            {"quantiles", quantile_description()}}},
          {"combinations", combos},
          {"failures", failures},
          {"timeouts", timeouts}};
}

}  // namespace patrelax
