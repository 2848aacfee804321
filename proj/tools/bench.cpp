// Benchmark of the OpenMP sweep kernels against their serial reference
// implementations. Results are cross-checked for equality; a mismatch fails
// the run.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slab/construct.hpp"
#include "slab/graph.hpp"
#include "slab/parallel.hpp"
#include "slab/potential.hpp"
#include "slab/shortcuts.hpp"

using namespace slab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Row {
  std::string name;
  double serial_s = 0;
  double parallel_s = 0;
  bool equal = false;
};

template <typename SerialFn, typename ParallelFn>
Row run_pair(const std::string& name, SerialFn&& serial, ParallelFn&& parallel) {
  Row row;
  row.name = name;
  auto t0 = std::chrono::steady_clock::now();
  const auto a = serial();
  row.serial_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto b = parallel();
  row.parallel_s = seconds_since(t0);
  row.equal = (a == b);
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap_from_env();
  CLI::App app{"serial vs parallel kernel benchmark"};
  std::uint32_t r = 8;
  app.add_option("--r", r, "base-instance scale (power of two)");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", max_threads());
  const Instance inst = build_base({.r = r, .d = 1});
  std::printf("base instance r=%u: n=%u m=%zu paths=%zu\n", r,
              inst.graph.num_vertices(), inst.graph.num_edges(),
              inst.paths.size());

  SourceSet layer0;
  for (std::uint64_t v = 0; v < inst.graph.layer_size(); ++v)
    layer0.vertices.push_back(static_cast<VertexId>(v));

  std::vector<Row> rows;
  rows.push_back(run_pair(
      "diameter (all-sources BFS)",
      [&] { return diameter_serial(inst.graph); },
      [&] { return diameter(inst.graph); }));
  rows.push_back(run_pair(
      "transitive closure",
      [&] { return transitive_closure_edges_serial(inst.graph); },
      [&] { return transitive_closure_edges(inst.graph); }));
  rows.push_back(run_pair(
      "augment c=2",
      [&] { return build_augment_serial(inst.graph, {.c = 2}); },
      [&] { return build_augment(inst.graph, {.c = 2}); }));
  rows.push_back(run_pair(
      "potential phi(empty)",
      [&] { return potential_serial(inst.graph, {}, {}, inst.paths); },
      [&] { return potential(inst.graph, {}, {}, inst.paths); }));
  rows.push_back(run_pair(
      "sourcewise diameter (layer 0)",
      [&] { return sourcewise_diameter_serial(inst.graph, {}, layer0); },
      [&] { return sourcewise_diameter(inst.graph, {}, layer0); }));

  std::printf("%-32s %12s %12s %9s %s\n", "kernel", "serial [s]",
              "parallel [s]", "speedup", "equal");
  bool all_equal = true;
  for (const Row& row : rows) {
    all_equal = all_equal && row.equal;
    std::printf("%-32s %12.4f %12.4f %8.2fx %s\n", row.name.c_str(),
                row.serial_s, row.parallel_s,
                row.parallel_s > 0 ? row.serial_s / row.parallel_s : 0.0,
                row.equal ? "yes" : "NO");
  }
  return all_equal ? 0 : 1;
}
