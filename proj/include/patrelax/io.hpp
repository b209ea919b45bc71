#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "patrelax/bench.hpp"
#include "patrelax/cutting_plane.hpp"
#include "patrelax/pattern.hpp"
#include "patrelax/poly.hpp"
#include "patrelax/separation.hpp"

namespace patrelax {

using Json = nlohmann::json;

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

/// {"n": 2, "box": [[a,b],...], "terms": [{"exp": [...], "coef": c}, ...]}
/// with optional "patterns" (pattern strings), "types" ("ML+CH" or a list of
/// tags), "epsilon" and "covering".
struct Problem {
  std::string name;
  SparsePolynomial f{1};
  BoxDomain box = BoxDomain::unit(1);
  std::optional<PatternFamily> family;
  std::optional<Combination> types;
  std::optional<double> epsilon;
  std::optional<CoveringSpec> covering;
};

Problem parse_problem(const Json& j);

/// {"n": 2, "exponents": [[...], ...]} with optional "name" and "reconstruction".
NamedSet parse_exponent_set(const Json& j);

/// Inverse of Pattern::describe: "{(2,0)}", "ML((1,1))", "CH((1,1),5)",
/// "(0,1)+CH((1,0),4)" or "TS([(1,0),(0,2)],(3,4))".
Pattern parse_pattern(std::string_view text);

/// {"values": [{"exp": [...], "value": v}, ...]} with optional "box" and "covering".
struct PointFile {
  MomentPoint point;
  std::optional<BoxDomain> box;
  std::optional<CoveringSpec> covering;
};
PointFile parse_point(const Json& j);

/// {"set": name | {exponent set}, "combinations": [...], "samples", "seed",
///  "epsilon", "covering", "box", "oracle": {...}, "time_budget", "jobs",
///  "allow_large"}
ExperimentConfig parse_experiment(const Json& j);

Json to_json(const ExponentVector& alpha);
Json to_json(const Cut& cut);
Json to_json(const PatternFamily& family);
Json to_json(const SolveReport& report);
Json to_json(const BoxplotStats& stats);
/// Box-plot statistics per combination plus run metadata and failures.
Json summary_json(const ExperimentResult& result);

}  // namespace patrelax
