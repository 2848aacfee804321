// slab - generate, verify and experiment with shortcut-set graph families.
//
// Subcommands: generate, verify, shortcut, adversary, eval, recipe.
// Exit codes: 0 success, 2 assertion failure, 3 input error, 4 size guard.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slab/construct.hpp"
#include "slab/graph.hpp"
#include "slab/io.hpp"
#include "slab/parallel.hpp"
#include "slab/potential.hpp"
#include "slab/shortcuts.hpp"
#include "slab/verify.hpp"

using nlohmann::json;
using namespace slab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitInput = 3;
constexpr int kExitResource = 4;

void emit_report(const json& report, const std::string& path) {
  if (!path.empty()) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open '" + path + "' for writing");
    os << report.dump(2) << '\n';
  }
  std::cout << report.dump(2) << std::endl;
}

json histogram_json(const std::vector<std::uint64_t>& count) {
  json h = json::object();
  for (std::size_t d = 1; d < count.size(); ++d)
    if (count[d] > 0) h[std::to_string(d)] = count[d];
  return h;
}

json verification_json(const VerificationReport& report) {
  json violations = json::array();
  constexpr std::size_t kMaxListed = 50;
  for (std::size_t i = 0; i < report.violations.size() && i < kMaxListed; ++i)
    violations.push_back(report.violations[i]);
  return json{{"lemma", report.lemma},
              {"checked", report.checked},
              {"violations", violations},
              {"violation_count", report.violations.size()},
              {"max_ratio", report.max_ratio},
              {"pass", report.pass()}};
}

// ---- generate ---------------------------------------------------------------

struct GenerateOptions {
  std::string family;
  std::uint32_t r = 2;
  std::uint32_t d = 1;
  std::int64_t subsample = 0;
  std::optional<std::uint64_t> sources_seed;
  std::string out;
};

int run_generate(const GenerateOptions& opt) {
  if (opt.family != "base" && opt.family != "gd")
    throw InputError("--family must be base or gd");
  const ConstructionParams params{opt.r, opt.d};
  Instance inst =
      opt.family == "base" ? build_base(params) : build_gd(params);

  json report{{"schema", "slab-report-v1"},
              {"kind", "generate"},
              {"family", opt.family},
              {"r", opt.r},
              {"d", opt.d}};

  std::optional<SourceSet> sources;
  if (opt.sources_seed) {
    sources = sample_source_set(inst.graph, *opt.sources_seed);
    report["sources_seed"] = *opt.sources_seed;
    report["sources"] = sources->vertices.size();
  }

  if (opt.subsample > 0) {
    // The contraction invalidates the critical-path schedule, so only the
    // graph artifact is emitted.
    const Graph contracted = path_subsample(inst.graph, opt.subsample);
    write_graph_file(opt.out, contracted);
    report["subsample"] = opt.subsample;
    report["n"] = contracted.num_vertices();
    report["m"] = contracted.num_edges();
    report["layers"] = contracted.num_layers();
  } else {
    write_graph_file(opt.out, inst.graph);
    write_paths_file(opt.out + ".paths", inst.paths, opt.d);
    report["paths"] = inst.paths.size();
    report["paths_file"] = opt.out + ".paths";
    report["n"] = inst.graph.num_vertices();
    report["m"] = inst.graph.num_edges();
    report["layers"] = inst.graph.num_layers();
  }
  if (sources) {
    write_sources_file(opt.out + ".sources", *sources);
    report["sources_file"] = opt.out + ".sources";
  }
  report["graph_file"] = opt.out;
  std::cout << report.dump(2) << std::endl;
  return kExitOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyOptions {
  std::string graph, paths, lemma, report;
};

int run_verify(const VerifyOptions& opt) {
  const Graph g = read_graph_file(opt.graph);
  const std::vector<CriticalPath> paths = read_paths_file(opt.paths);

  VerificationReport result;
  if (opt.lemma == "unique") {
    result = verify_unique_paths(g, paths);
  } else if (opt.lemma == "disjoint") {
    result = verify_vertex_disjoint(g, paths);
  } else if (opt.lemma == "overlap") {
    result = verify_overlap_bound(g, paths);
  } else {
    throw InputError("--lemma must be unique, disjoint or overlap");
  }

  json report = verification_json(result);
  report["schema"] = "slab-report-v1";
  report["kind"] = "verify";
  report["config"] = {{"graph", opt.graph}, {"paths", opt.paths}};
  emit_report(report, opt.report);
  return result.pass() ? kExitOk : kExitAssertion;
}

// ---- shortcut ---------------------------------------------------------------

struct ShortcutOptions {
  std::string algo, graph, sources, out, report;
  std::uint32_t target_d = 0;
  std::uint64_t seed = 0;
};

int run_shortcut(const ShortcutOptions& opt) {
  const Graph g = read_graph_file(opt.graph);
  ShortcutSet h;
  json config{{"algo", opt.algo}, {"graph", opt.graph}, {"seed", opt.seed}};
  if (opt.algo == "folklore") {
    if (opt.target_d == 0)
      throw InputError("folklore shortcutting needs --target-d");
    h = folklore_shortcut(g, opt.target_d, opt.seed);
    config["target_d"] = opt.target_d;
  } else if (opt.algo == "sourcewise") {
    if (opt.sources.empty())
      throw InputError("sourcewise shortcutting needs --sources");
    const SourceSet sources = read_sources_file(opt.sources);
    h = sourcewise_shortcut(g, sources, opt.seed);
    config["sources"] = opt.sources;
  } else {
    throw InputError("--algo must be folklore or sourcewise");
  }
  write_shortcuts_file(opt.out, h);
  json report{{"schema", "slab-report-v1"},
              {"kind", "shortcut"},
              {"h_size", h.size()},
              {"out", opt.out},
              {"config", config}};
  emit_report(report, opt.report);
  return kExitOk;
}

// ---- adversary --------------------------------------------------------------

struct AdversaryOptions {
  std::string graph, paths, strategy, sources, report;
  std::size_t budget = 0;
  std::uint32_t c = 0;
  bool half_layer = false;
  std::uint64_t seed = 0;
};

int run_adversary(const AdversaryOptions& opt) {
  const Graph g = read_graph_file(opt.graph);
  const std::vector<CriticalPath> paths = read_paths_file(opt.paths);
  PotentialConfig config;
  config.c = opt.c;
  config.half_layer_rule = opt.half_layer;
  if (!opt.sources.empty())
    config.restrict_to_sources = read_sources_file(opt.sources);

  const PotentialReport result = adversary_run(
      g, paths, opt.budget, parse_strategy(opt.strategy), opt.seed, config);

  json drop_histogram = json::object();
  for (const auto& [drop, count] : result.drop_histogram)
    drop_histogram[std::to_string(drop)] = count;
  json report{{"schema", "slab-report-v1"},
              {"kind", "adversary"},
              {"initial", result.initial},
              {"final", result.final_potential},
              {"budget_used", result.budget_used},
              {"max_pair_distance", result.max_pair_distance},
              {"drop_histogram", drop_histogram},
              {"config",
               {{"graph", opt.graph},
                {"paths", opt.paths},
                {"budget", opt.budget},
                {"strategy", opt.strategy},
                {"c", opt.c},
                {"half_layer", opt.half_layer},
                {"seed", opt.seed}}}};
  emit_report(report, opt.report);
  return kExitOk;
}

// ---- eval -------------------------------------------------------------------

struct EvalOptions {
  std::string graph, shortcuts, sources, report;
};

int run_eval(const EvalOptions& opt) {
  const Graph g = read_graph_file(opt.graph);
  ShortcutSet h;
  if (!opt.shortcuts.empty()) {
    h = read_shortcuts_file(opt.shortcuts);
    h.validate(g);
  }
  json report{{"schema", "slab-report-v1"},
              {"kind", "eval"},
              {"config",
               {{"graph", opt.graph},
                {"shortcuts", opt.shortcuts},
                {"sources", opt.sources}}}};
  if (!opt.sources.empty()) {
    const SourceSet sources = read_sources_file(opt.sources);
    const Graph hg = h.as_overlay(g.num_vertices());
    const Graph* overlay_arr[2] = {&g, &hg};
    std::vector<std::uint64_t> count;
    std::vector<std::uint32_t> dist(g.num_vertices());
    std::vector<VertexId> queue;
    std::uint32_t best = 0;
    for (VertexId s : sources.vertices) {
      if (s >= g.num_vertices()) throw InputError("source vertex out of range");
      bfs_overlay({overlay_arr, 2}, s, dist, queue);
      for (VertexId v : queue) {
        const std::uint32_t d = dist[v];
        if (d == 0) continue;
        best = std::max(best, d);
        if (d >= count.size()) count.resize(d + 1, 0);
        ++count[d];
      }
    }
    report["sourcewise"] = true;
    report["sourcewise_diameter"] = best;
    report["histogram"] = histogram_json(count);
  } else {
    const DistanceHistogram hist = distance_histogram(g, h);
    report["sourcewise"] = false;
    report["diameter"] = hist.diameter;
    report["histogram"] = histogram_json(hist.count);
  }
  emit_report(report, opt.report);
  return kExitOk;
}

// ---- recipe -----------------------------------------------------------------

struct RecipeOptions {
  std::string file, report, outdir = ".";
};

double metric_or_throw(const json& metrics, const std::string& name) {
  if (!metrics.contains(name))
    throw InputError("assertion references unknown metric '" + name + "'");
  return metrics.at(name).get<double>();
}

bool compare(double actual, const std::string& op, double value) {
  if (op == "==") return actual == value;
  if (op == "!=") return actual != value;
  if (op == "<=") return actual <= value;
  if (op == ">=") return actual >= value;
  if (op == "<") return actual < value;
  if (op == ">") return actual > value;
  throw InputError("unknown assertion op '" + op + "'");
}

int run_recipe(const RecipeOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ifstream is(opt.file);
  if (!is) throw InputError("cannot open recipe '" + opt.file + "'");
  json recipe;
  try {
    recipe = json::parse(is);
  } catch (const json::parse_error& e) {
    throw InputError(opt.file + ": " + e.what());
  }

  const std::string name = recipe.value("name", "recipe");
  json steps = json::array();
  json metrics = json::object();

  // pipeline state
  std::optional<Instance> instance;
  std::optional<ShortcutSet> shortcuts;
  std::optional<SourceSet> sources;

  auto require_instance = [&]() -> Instance& {
    if (!instance)
      throw InputError("pipeline step needs a prior generate step");
    return *instance;
  };
  auto recipe_seed = [&]() -> std::uint64_t {
    if (!recipe.contains("seed"))
      throw InputError("recipe uses randomized steps but has no 'seed'");
    return recipe.at("seed").get<std::uint64_t>();
  };
  const std::string artifact_base = opt.outdir + "/" + name;

  for (const json& step : recipe.value("pipeline", json::array())) {
    if (!step.contains("op"))
      throw InputError("pipeline step is missing the 'op' field");
    const std::string op = step.at("op").get<std::string>();
    json step_metrics = json::object();

    if (op == "generate") {
      const std::string family = recipe.value("family", "base");
      if (family != "base" && family != "gd")
        throw InputError("recipe field 'family' must be \"base\" or \"gd\"");
      const json params = recipe.value("params", json::object());
      const ConstructionParams cp{params.value("r", 2u), params.value("d", 1u)};
      instance = family == "base" ? build_base(cp) : build_gd(cp);
      write_graph_file(artifact_base + ".graph", instance->graph);
      write_paths_file(artifact_base + ".graph.paths", instance->paths, cp.d);
      if (step.value("sources", false)) {
        sources = sample_source_set(instance->graph, recipe_seed());
        write_sources_file(artifact_base + ".graph.sources", *sources);
        step_metrics["sources"] = sources->vertices.size();
      }
      step_metrics["n"] = instance->graph.num_vertices();
      step_metrics["m"] = instance->graph.num_edges();
      step_metrics["layers"] = instance->graph.num_layers();
      step_metrics["paths"] = instance->paths.size();
    } else if (op == "verify") {
      Instance& inst = require_instance();
      const std::string lemma = step.value("lemma", "");
      VerificationReport result;
      if (lemma == "unique") {
        result = verify_unique_paths(inst.graph, inst.paths);
      } else if (lemma == "disjoint") {
        result = verify_vertex_disjoint(inst.graph, inst.paths);
      } else if (lemma == "overlap") {
        result = verify_overlap_bound(inst.graph, inst.paths);
      } else {
        throw InputError("verify step needs lemma unique|disjoint|overlap");
      }
      step_metrics[lemma + "_checked"] = result.checked;
      step_metrics[lemma + "_violations"] = result.violations.size();
      step_metrics[lemma + "_max_ratio"] = result.max_ratio;
    } else if (op == "shortcut") {
      Instance& inst = require_instance();
      const std::string algo = step.value("algo", "");
      if (algo == "folklore") {
        const std::uint32_t target = step.value("target_d", 0u);
        if (target == 0) throw InputError("folklore step needs target_d");
        shortcuts = folklore_shortcut(inst.graph, target, recipe_seed());
      } else if (algo == "sourcewise") {
        if (!sources)
          throw InputError("sourcewise step needs generate with sources=true");
        shortcuts = sourcewise_shortcut(inst.graph, *sources, recipe_seed());
      } else {
        throw InputError("shortcut step needs algo folklore|sourcewise");
      }
      write_shortcuts_file(artifact_base + ".h", *shortcuts);
      step_metrics["h_size"] = shortcuts->size();
    } else if (op == "adversary") {
      Instance& inst = require_instance();
      PotentialConfig config;
      config.c = step.value("c", 0u);
      config.half_layer_rule = step.value("half_layer", false);
      if (step.value("restrict_to_sources", false)) {
        if (!sources)
          throw InputError("adversary restriction needs sampled sources");
        config.restrict_to_sources = sources;
      }
      const PotentialReport result = adversary_run(
          inst.graph, inst.paths, step.value("budget", 0ull),
          parse_strategy(step.value("strategy", "greedy-max-drop")),
          recipe_seed(), config);
      step_metrics["phi_initial"] = result.initial;
      step_metrics["phi_final"] = result.final_potential;
      step_metrics["budget_used"] = result.budget_used;
      step_metrics["max_pair_distance"] = result.max_pair_distance;
      step_metrics["c"] = config.c;
    } else if (op == "eval") {
      Instance& inst = require_instance();
      const ShortcutSet h = shortcuts.value_or(ShortcutSet{});
      if (sources) {
        step_metrics["sourcewise_diameter"] =
            sourcewise_diameter(inst.graph, h, *sources);
      } else {
        step_metrics["diameter"] = diameter(inst.graph, h);
      }
    } else {
      throw InputError("unknown pipeline op '" + op + "'");
    }
    metrics.update(step_metrics);
    steps.push_back({{"op", op}, {"metrics", step_metrics}});
  }

  json assertions = json::array();
  bool all_pass = true;
  for (const json& a : recipe.value("assertions", json::array())) {
    if (!a.contains("metric") || !a.contains("op") || !a.contains("value"))
      throw InputError("assertion needs 'metric', 'op' and 'value' fields");
    const std::string metric = a.at("metric").get<std::string>();
    const std::string op = a.at("op").get<std::string>();
    const double value = a.at("value").get<double>();
    const double actual = metric_or_throw(metrics, metric);
    const bool pass = compare(actual, op, value);
    all_pass = all_pass && pass;
    assertions.push_back({{"metric", metric},
                          {"op", op},
                          {"value", value},
                          {"actual", actual},
                          {"pass", pass}});
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  json report{{"schema", "slab-report-v1"},
              {"kind", "recipe"},
              {"name", name},
              {"steps", steps},
              {"assertions", assertions},
              {"pass", all_pass},
              {"wall_clock_ms", elapsed.count()},
              {"config", recipe}};
  emit_report(report, opt.report);
  return all_pass ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap_from_env();
  CLI::App app{"shortcut-set graph family lab"};
  app.require_subcommand(1);

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "emit a graph family");
  generate->add_option("--family", gen.family, "base|gd")->required();
  generate->add_option("--r", gen.r, "scale, power of two")->required();
  generate->add_option("--d", gen.d, "grid dimension minus one");
  generate->add_option("--subsample", gen.subsample, "layer stride k");
  generate->add_option("--sources-seed", gen.sources_seed,
                       "also sample a first-layer source set");
  generate->add_option("--out", gen.out, "output graph file")->required();

  VerifyOptions ver;
  CLI::App* verify = app.add_subcommand("verify", "check a structural lemma");
  verify->add_option("--graph", ver.graph)->required();
  verify->add_option("--paths", ver.paths)->required();
  verify->add_option("--lemma", ver.lemma, "unique|disjoint|overlap")
      ->required();
  verify->add_option("--report", ver.report, "JSON report path");

  ShortcutOptions sc;
  CLI::App* shortcut =
      app.add_subcommand("shortcut", "build an upper-bound shortcut set");
  shortcut->add_option("--algo", sc.algo, "folklore|sourcewise")->required();
  shortcut->add_option("--graph", sc.graph)->required();
  shortcut->add_option("--sources", sc.sources, "SLAB-S file (sourcewise)");
  shortcut->add_option("--target-d", sc.target_d, "diameter target (folklore)");
  shortcut->add_option("--seed", sc.seed)->required();
  shortcut->add_option("--out", sc.out, "output SLAB-H file")->required();
  shortcut->add_option("--report", sc.report, "JSON report path");

  AdversaryOptions adv;
  CLI::App* adversary =
      app.add_subcommand("adversary", "budgeted potential experiment");
  adversary->add_option("--graph", adv.graph)->required();
  adversary->add_option("--paths", adv.paths)->required();
  adversary->add_option("--budget", adv.budget)->required();
  adversary->add_option("--strategy", adv.strategy,
                        "random-closure|greedy-max-drop|hitting-set")
      ->required();
  adversary->add_option("--c", adv.c, "augmentation radius");
  adversary->add_flag("--half-layer", adv.half_layer,
                      "augment into the first half of the layers");
  adversary->add_option("--sources", adv.sources,
                        "restrict tracked paths to these starts");
  adversary->add_option("--seed", adv.seed)->required();
  adversary->add_option("--report", adv.report, "JSON report path");

  EvalOptions ev;
  CLI::App* eval = app.add_subcommand("eval", "exact diameter evaluation");
  eval->add_option("--graph", ev.graph)->required();
  eval->add_option("--shortcuts", ev.shortcuts, "SLAB-H file");
  eval->add_option("--sources", ev.sources, "SLAB-S file");
  eval->add_option("--report", ev.report, "JSON report path");

  RecipeOptions rec;
  CLI::App* recipe =
      app.add_subcommand("recipe", "run a reproducible experiment recipe");
  recipe->add_option("file", rec.file, "recipe JSON")->required();
  recipe->add_option("--report", rec.report, "JSON report path");
  recipe->add_option("--outdir", rec.outdir, "artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (verify->parsed()) return run_verify(ver);
    if (shortcut->parsed()) return run_shortcut(sc);
    if (adversary->parsed()) return run_adversary(adv);
    if (eval->parsed()) return run_eval(ev);
    if (recipe->parsed()) return run_recipe(rec);
  } catch (const ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << std::endl;
    return kExitResource;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return kExitInput;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << std::endl;
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitInput;
  }
  return kExitOk;
}
