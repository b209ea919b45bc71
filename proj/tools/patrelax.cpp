#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "patrelax/bench.hpp"
#include "patrelax/cutting_plane.hpp"
#include "patrelax/io.hpp"

using namespace patrelax;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> covering;
  std::optional<std::string> types;
  std::string out;
  bool timing = false;
  std::size_t jobs = 0;
};

Combination parse_types(const std::string& text) {
  std::string joined = text;
  for (char& c : joined) {
    if (c == ',') c = '+';
  }
  return Combination::parse(joined);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

fs::path output_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

int run_relax(const std::string& file, const Common& opt, std::size_t cap) {
  const Problem p = parse_problem(read_json_file(file));
  RelaxationInstance inst{p.f, {}, p.box, 1e-4, {}};
  if (p.family && !opt.types) {
    inst.family = *p.family;
  } else {
    const Combination c = opt.types ? parse_types(*opt.types)
                                    : p.types.value_or(Combination::parse("ML+AC+CH+SC"));
    inst.family = c.family_for(p.f.support());
  }
  inst.epsilon = opt.epsilon.value_or(p.epsilon.value_or(1e-4));
  if (opt.covering) {
    inst.separation.covering = CoveringSpec::parse(*opt.covering);
  } else if (p.covering) {
    inst.separation.covering = *p.covering;
  }
  if (!(inst.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  SolveOptions so;
  so.iteration_cap = cap;
  const SolveReport r = solve_relaxation(inst, so);

  std::printf("patterns: %zu\n", inst.family.size());
  for (const auto& pat : inst.family.patterns()) std::printf("  %s\n", pat.describe().c_str());
  std::printf("iter  bound                   max_distance  cuts\n");
  for (const auto& t : r.trace) {
    std::printf("%4zu  %-22.15g  %-12.4g  %zu\n", t.iteration, t.bound, t.max_distance, t.cuts);
  }
  std::printf("lower bound: %.17g\n", r.lower_bound);
  std::printf("iterations: %zu  cuts: %zu  termination: %s\n", r.iterations, r.cuts_added,
              std::string(termination_name(r.termination)).c_str());
  if (!opt.out.empty()) {
    Json j = to_json(r);
    j["family"] = to_json(inst.family);
    j["epsilon"] = inst.epsilon;
    j["covering"] = inst.separation.covering.to_string();
    write_file(output_dir(opt.out) / "report.json", j.dump(2) + "\n");
  }
  return kExitOk;
}

int run_patterns(const std::string& source, const Common& opt) {
  NamedSet set;
  if (fs::exists(source)) {
    set = parse_exponent_set(read_json_file(source));
  } else {
    set = named_set(source);
  }
  const Combination c = parse_types(opt.types.value_or("ML,AC,CH,SC"));
  const PatternFamily family = c.family_for(set.exponents);
  std::printf("set %s, %zu exponents, order %s\n", set.name.c_str(), set.exponents.size(),
              c.label().c_str());
  for (const auto& p : family.patterns()) {
    std::string elems;
    for (const auto& e : p.elements()) elems += " " + e.to_string();
    std::printf("  %-24s%s\n", p.describe().c_str(), elems.c_str());
  }
  std::printf("cover size %zu\n", family.cover().size());
  if (!opt.out.empty()) write_file(output_dir(opt.out) / "family.json", to_json(family).dump(2) + "\n");
  return kExitOk;
}

int run_separate(const std::string& pattern_text, const std::string& file, const Common& opt) {
  const Pattern pattern = parse_pattern(pattern_text);
  const PointFile pf = parse_point(read_json_file(file));
  const BoxDomain box = pf.box.value_or(BoxDomain::unit(pattern.dimension()));
  SeparationConfig config;
  if (opt.covering) {
    config.covering = CoveringSpec::parse(*opt.covering);
  } else if (pf.covering) {
    config.covering = *pf.covering;
  }
  for (const auto& e : pattern.elements()) {
    if (!pf.point.contains(e)) throw FormatError("point has no value for " + e.to_string());
  }
  const auto cut = separate(pattern, pf.point, box, config);
  Json j;
  j["pattern"] = pattern.describe();
  j["separated"] = cut.has_value();
  if (cut) j["cut"] = to_json(*cut);
  std::printf("%s\n", j.dump(2).c_str());
  if (!opt.out.empty()) write_file(output_dir(opt.out) / "cut.json", j.dump(2) + "\n");
  return kExitOk;
}

int run_bench(const std::string& file, const Common& opt, std::optional<std::size_t> samples) {
  ExperimentConfig cfg = parse_experiment(read_json_file(file));
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.epsilon) cfg.epsilon = *opt.epsilon;
  if (opt.covering) cfg.covering = CoveringSpec::parse(*opt.covering);
  if (opt.types) cfg.combinations = {parse_types(*opt.types)};
  if (opt.jobs > 0) cfg.jobs = opt.jobs;
  if (samples) cfg.samples = *samples;
  cfg.timing = opt.timing;
  validate(cfg);

  const ExperimentResult result = run_experiment(cfg);
  const fs::path dir = output_dir(opt.out.empty() ? "bench_out" : opt.out);
  write_file(dir / "results.csv", results_csv(result));
  write_file(dir / "summary.json", summary_json(result).dump(2) + "\n");
  for (const auto& s : result.summaries) {
    write_file(dir / ("boxplot_" + slug(s.combination) + ".svg"), boxplot_svg(s));
  }
  std::printf("%-16s %8s %10s %10s %10s %10s\n", "combination", "family", "q1", "median", "q3",
              "ref_med");
  for (const auto& s : result.summaries) {
    std::printf("%-16s %8zu %10.4f %10.4f %10.4f %10.4f\n", s.combination.c_str(), s.family_size,
                s.nu ? s.nu->q1 : NAN, s.nu ? s.nu->median : NAN, s.nu ? s.nu->q3 : NAN,
                s.nu_ref ? s.nu_ref->median : NAN);
  }
  std::printf("instances: %zu  failures: %zu  timeouts: %zu  output: %s\n", cfg.samples,
              result.failures(), result.timeouts(), dir.string().c_str());
  return result.failures() > 0 ? kExitPartial : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern relaxation lower bounds for box-constrained polynomial minimization"};
  app.require_subcommand(1);
  Common opt;
  std::size_t cap = 10000;
  std::optional<std::size_t> samples;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--epsilon", opt.epsilon, "separation tolerance");
    sub->add_option("--covering", opt.covering, "chain covering: equal:N or tol:EPS");
    sub->add_option("--out", opt.out, "output directory");
  };

  std::string problem_file;
  auto* relax = app.add_subcommand("relax", "lower bound for one problem file");
  relax->add_option("problem", problem_file, "problem JSON")->required();
  relax->add_option("--types", opt.types, "pattern types in order, e.g. ML,AC,CH,SC");
  relax->add_option("--iteration-cap", cap, "cutting-plane iteration cap");
  add_common(relax);

  std::string set_source;
  auto* patterns = app.add_subcommand("patterns", "print the pattern family for an exponent set");
  patterns->add_option("set", set_source, "exponent set JSON or a set name")->required();
  patterns->add_option("--types", opt.types, "pattern types in order, e.g. ML,AC,CH,SC");
  patterns->add_option("--out", opt.out, "output directory");

  std::string pattern_text, point_file;
  auto* sep = app.add_subcommand("separate", "one separation oracle call");
  sep->add_option("pattern", pattern_text, "pattern, e.g. CH((1,1),5)")->required();
  sep->add_option("point", point_file, "point JSON")->required();
  add_common(sep);

  std::string experiment_file;
  auto* bench = app.add_subcommand("bench", "run an experiment file");
  bench->add_option("experiment", experiment_file, "experiment JSON")->required();
  bench->add_option("--seed", opt.seed, "coefficient seed");
  bench->add_option("--types", opt.types, "single combination overriding the file");
  bench->add_option("--jobs", opt.jobs, "worker threads");
  bench->add_option("--samples", samples, "instance count");
  bench->add_flag("--timing", opt.timing, "fill the wall_ms column");
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*relax) return run_relax(problem_file, opt, cap);
    if (*patterns) return run_patterns(set_source, opt);
    if (*sep) return run_separate(pattern_text, point_file, opt);
    if (*bench) return run_bench(experiment_file, opt, samples);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitConfig;
}
