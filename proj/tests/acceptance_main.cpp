// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria combine the exact finite counts of the generated
// families with property-based checks of the shortcut machinery.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "slab/construct.hpp"
#include "slab/graph.hpp"
#include "slab/io.hpp"
#include "slab/parallel.hpp"
#include "slab/potential.hpp"
#include "slab/rng.hpp"
#include "slab/shortcuts.hpp"
#include "slab/verify.hpp"

using namespace slab;

namespace {

// Regression thresholds pinned from the first verified run of this suite.
constexpr double kSparseChainEdgeFactor = 1.0;        // edges <= factor * L
constexpr double kOverlapConstantD2R2 = 4.7;          // max count*(g/r)^2, r=2
constexpr double kOverlapConstantD2R4 = 4.7;          // max count*(g/r)^2, r=4
constexpr double kSourcewiseEdgeFactor = 0.35;        // |H| <= f * n * log2(n)^2
constexpr double kSourcewiseDiameterFactor = 0.25;    // diam <= f * sqrt(|S|) * log2(n)^2

struct Harness {
  int failures = 0;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void criterion(int number, const std::string& name, bool pass,
                 const std::string& detail) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    start = std::chrono::steady_clock::now();
    std::printf("[%s] criterion %2d: %s (%s) [%.1fs]\n",
                pass ? "PASS" : "FAIL", number, name.c_str(), detail.c_str(),
                elapsed);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string format(const char* fmt, ...) {
  char buffer[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buffer, sizeof buffer, fmt, args);
  va_end(args);
  return buffer;
}

// Independent reachability oracle (bitset Warshall) for criterion 11.
struct ReachOracle {
  std::size_t n, words;
  std::vector<std::uint64_t> bits;

  explicit ReachOracle(const Graph& g)
      : n(g.num_vertices()), words((n + 63) / 64), bits(n * words, 0) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v : g.out(u)) row(u)[v / 64] |= 1ull << (v % 64);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (row(i)[k / 64] >> (k % 64) & 1)
          for (std::size_t w = 0; w < words; ++w) row(i)[w] |= row(k)[w];
  }
  std::uint64_t* row(std::size_t i) { return bits.data() + i * words; }
  bool reaches(VertexId a, VertexId b) {
    return row(a)[b / 64] >> (b % 64) & 1;
  }
};

bool check_decomposition(const Graph& dag, const ChainDecomposition& d,
                         std::string* why) {
  ReachOracle reach(dag);
  std::vector<int> covered(dag.num_vertices(), 0);
  for (const std::vector<VertexId>& chain : d.chains) {
    for (VertexId v : chain) ++covered[v];
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (!reach.reaches(chain[i], chain[i + 1])) {
        *why = "chain order violated";
        return false;
      }
    }
  }
  for (const std::vector<VertexId>& anti : d.antichains) {
    for (VertexId v : anti) ++covered[v];
    for (VertexId u : anti)
      for (VertexId v : anti)
        if (u != v && reach.reaches(u, v)) {
          *why = "antichain contains a reachable pair";
          return false;
        }
  }
  for (VertexId v = 0; v < dag.num_vertices(); ++v)
    if (covered[v] != 1) {
      *why = "not a partition";
      return false;
    }
  if (d.antichains.size() * d.ell_target > 2 * dag.num_vertices()) {
    *why = "too many antichains";
    return false;
  }
  return true;
}

std::uint32_t ceil_log2(std::uint32_t x) {
  std::uint32_t bits = 0;
  while ((1ull << bits) < x) ++bits;
  return bits;
}

std::uint32_t chain_hop_diameter(
    std::uint32_t length,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& extra) {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < length; ++i) edges.emplace_back(i, i + 1);
  for (const auto& [a, b] : extra) edges.emplace_back(a, b);
  return diameter(Graph(length, std::move(edges)));
}

Graph long_path(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph random_dag(VertexId n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap_from_env();
  const std::string golden_dir = argc > 1 ? argv[1] : "tests/golden";
  Harness h;

  // 1 — exact construction counts
  {
    bool pass = true;
    std::string detail;
    for (std::uint32_t r : {2u, 4u, 8u, 16u}) {
      const Instance inst = build_base({.r = r, .d = 1});
      const std::uint64_t want_v = 4ull * r * r * r * (r + 1);
      const std::uint64_t cap_e = 8ull * r * r * r * r;
      const std::uint64_t want_p = 1ull * r * r * r * r;
      pass = pass && inst.graph.num_vertices() == want_v &&
             inst.graph.num_edges() <= cap_e && inst.paths.size() == want_p;
      if (r == 16)
        detail = format("r=16: n=%u m=%zu paths=%zu", inst.graph.num_vertices(),
                        inst.graph.num_edges(), inst.paths.size());
    }
    for (std::uint32_t r : {2u, 4u}) {
      const Instance inst = build_gd({.r = r, .d = 2});
      const std::uint64_t want_p = 1ull * r * r * r * r * r * r;
      pass = pass && inst.paths.size() == want_p;
    }
    h.criterion(1, "exact construction counts", pass, detail);
  }

  // 2 — unique endpoint-to-endpoint paths
  {
    bool pass = true;
    std::uint64_t checked = 0;
    for (std::uint32_t r : {2u, 4u, 8u}) {
      const Instance inst = build_base({.r = r, .d = 1});
      const VerificationReport rep = verify_unique_paths(inst.graph, inst.paths);
      pass = pass && rep.pass();
      checked += rep.checked;
    }
    const Instance gd = build_gd({.r = 2, .d = 2});
    const VerificationReport rep = verify_unique_paths(gd.graph, gd.paths);
    pass = pass && rep.pass();
    checked += rep.checked;
    h.criterion(2, "unique critical paths", pass,
                format("%llu paths checked exhaustively",
                       static_cast<unsigned long long>(checked)));
  }

  // 3 — vertex disjointness within threshold groups
  {
    bool pass = true;
    for (std::uint32_t r : {2u, 4u, 8u}) {
      const Instance inst = build_base({.r = r, .d = 1});
      pass = pass && verify_vertex_disjoint(inst.graph, inst.paths).pass();
    }
    const Instance gd = build_gd({.r = 2, .d = 2});
    pass = pass && verify_vertex_disjoint(gd.graph, gd.paths).pass();
    h.criterion(3, "vertex-disjoint threshold groups", pass,
                "per-layer distinctness, exhaustive");
  }

  // 4 — subpath overlap bound (d=1 exact; d=2 pinned empirical constant)
  {
    bool pass = true;
    double worst = 0;
    for (std::uint32_t r : {4u, 8u}) {
      const Instance inst = build_base({.r = r, .d = 1});
      const VerificationReport rep =
          verify_overlap_bound(inst.graph, inst.paths);
      pass = pass && rep.pass() && rep.max_ratio <= 1.0;
      worst = std::max(worst, rep.max_ratio);
    }
    double d2r2 = 0, d2r4 = 0;
    {
      const Instance inst = build_gd({.r = 2, .d = 2});
      d2r2 = verify_overlap_bound(inst.graph, inst.paths).max_ratio;
      const Instance inst4 = build_gd({.r = 4, .d = 2});
      d2r4 = verify_overlap_bound(inst4.graph, inst4.paths).max_ratio;
    }
    pass = pass && d2r2 <= kOverlapConstantD2R2 && d2r4 <= kOverlapConstantD2R4;
    h.criterion(4, "subpath overlap bounds", pass,
                format("d=1 worst ratio %.4f; d=2 constants %.3f / %.3f", worst,
                       d2r2, d2r4));
  }

  // 5 — potential baseline
  {
    bool pass = true;
    for (std::uint32_t r : {2u, 4u, 8u}) {
      const Instance inst = build_base({.r = r, .d = 1});
      const std::uint64_t phi = potential(inst.graph, {}, {}, inst.paths);
      pass = pass && phi == static_cast<std::uint64_t>(inst.paths.size()) * r;
    }
    h.criterion(5, "potential baseline phi(empty) = |P| * r", pass,
                "r in {2,4,8}");
  }

  // 6 — per-edge drop audit, pristine potential
  {
    const Instance inst = build_base({.r = 4, .d = 1});
    const std::uint32_t ell = inst.graph.num_layers();
    const std::vector<Edge> closure = transitive_closure_edges(inst.graph);
    const PathIndex index = PathIndex::build(inst.graph, inst.paths);
    PotentialEvaluator evaluator(inst.graph, {}, index);
    bool pass = true;
    std::uint64_t max_drop = 0;
    for (const Edge& e : closure) {
      const DropResult result = drop_of_edge(evaluator, e);
      const std::uint32_t span =
          inst.graph.layer_of(e.second) - inst.graph.layer_of(e.first);
      max_drop = std::max(max_drop, result.drop);
      if (result.drop > 8ull * ell || result.affected * span > 8ull * ell) {
        pass = false;
        break;
      }
    }
    h.criterion(6, "per-edge drop bound, every closure edge", pass,
                format("%zu closure edges, max drop %llu <= 8*l = %u",
                       closure.size(),
                       static_cast<unsigned long long>(max_drop), 8 * ell));
  }

  // 7 — augmented drop with radius c=2
  {
    const Instance inst = build_base({.r = 4, .d = 1});
    const std::vector<Edge> augment = build_augment(inst.graph, {.c = 2});
    const std::vector<Edge> closure = transitive_closure_edges(inst.graph);
    const PathIndex index = PathIndex::build(inst.graph, inst.paths);
    PotentialEvaluator evaluator(inst.graph, augment, index);
    bool pass = true;
    for (const Edge& e : closure) {
      const DropResult result = drop_of_edge(evaluator, e);
      const std::uint32_t span =
          inst.graph.layer_of(e.second) - inst.graph.layer_of(e.first);
      if (span <= 2) {
        if (result.drop != 0) {
          pass = false;
          break;
        }
      } else {
        const std::uint64_t per_path = (span + 1) / 2 - 1;  // ceil(g/c) - 1
        if (result.drop > per_path * result.affected) {
          pass = false;
          break;
        }
      }
    }
    h.criterion(7, "augmented drop: zero at short range, ceil(g/c)-1 beyond",
                pass, format("c=2, %zu closure edges", closure.size()));
  }

  // 8 — greedy budget experiment with the averaging witness
  {
    const Instance inst = build_base({.r = 8, .d = 1});
    const std::size_t budget = inst.paths.size() / (16 * 8);
    const PotentialReport report =
        adversary_run(inst.graph, inst.paths, budget,
                      AdversaryStrategy::kGreedyMaxDrop, 1, {});
    const bool half = report.final_potential * 2 >= report.initial;
    const bool witness =
        static_cast<std::uint64_t>(report.max_pair_distance) *
            inst.paths.size() >=
        report.final_potential;
    h.criterion(
        8, "greedy adversary keeps half the potential", half && witness,
        format("budget %zu, phi %llu -> %llu, max pair distance %u",
               report.budget_used,
               static_cast<unsigned long long>(report.initial),
               static_cast<unsigned long long>(report.final_potential),
               report.max_pair_distance));
  }

  // 9 — folklore sampling upper bound
  {
    int ok_base = 0, ok_path = 0;
    const Instance inst = build_base({.r = 4, .d = 1});
    const std::uint32_t d_base = static_cast<std::uint32_t>(
        std::ceil(std::sqrt(inst.graph.num_vertices())));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const ShortcutSet hset = folklore_shortcut(inst.graph, d_base, seed);
      if (diameter(inst.graph, hset) <= 3 * d_base) ++ok_base;
    }
    const Graph path = long_path(512);
    const std::uint32_t d_path =
        static_cast<std::uint32_t>(std::ceil(std::sqrt(512.0)));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const ShortcutSet hset = folklore_shortcut(path, d_path, seed);
      if (diameter(path, hset) <= 3 * d_path) ++ok_path;
    }
    h.criterion(9, "folklore sampling reaches 3D", ok_base >= 19 && ok_path >= 19,
                format("base r=4: %d/20, path n=512: %d/20", ok_base, ok_path));
  }

  // 10 — chain shortcutting schemes for all L = 2^k, k <= 12
  {
    bool pass = true;
    std::string detail;
    for (std::uint32_t k = 0; k <= 12; ++k) {
      const std::uint32_t length = 1u << k;
      const auto dense = shortcut_path_diam2(length);
      const auto sparse = shortcut_path_sparse(length);
      const bool dense_ok =
          dense.size() <=
              static_cast<std::size_t>(length) * ceil_log2(length) &&
          (length < 2 || chain_hop_diameter(length, dense) <= 2);
      const bool sparse_ok =
          sparse.size() <= kSparseChainEdgeFactor * length &&
          (length < 2 ||
           chain_hop_diameter(length, sparse) <= 2 + 2 * ceil_log2(length));
      pass = pass && dense_ok && sparse_ok;
      if (k == 12)
        detail = format("L=4096: dense %zu edges diam<=2, sparse %zu edges",
                        dense.size(), sparse.size());
    }
    h.criterion(10, "diam-2 and sparse chain schemes", pass, detail);
  }

  // 11 — chain/antichain decomposition invariants
  {
    bool pass = true;
    std::string why = "50 random DAGs + base instances";
    for (std::uint64_t seed = 1; seed <= 50 && pass; ++seed) {
      const VertexId n = static_cast<VertexId>(50 + (seed * 5) % 251);
      const double p = 0.01 + 0.002 * (seed % 10);
      const Graph dag = random_dag(n, p, seed);
      const std::size_t ell = 1 + seed % 24;
      pass = check_decomposition(dag, chain_antichain_decompose(dag, ell), &why);
    }
    for (std::uint32_t r : {2u, 4u}) {
      if (!pass) break;
      const Instance inst = build_base({.r = r, .d = 1});
      pass = check_decomposition(
          inst.graph, chain_antichain_decompose(inst.graph, 8 * r), &why);
    }
    h.criterion(11, "chain/antichain decomposition invariants", pass, why);
  }

  // 12 — sourcewise upper bound with pinned constants
  {
    bool pass = true;
    double worst_edge_factor = 0, worst_diam_factor = 0;
    const Instance inst = build_base({.r = 4, .d = 1});
    const double log_base = std::log2(inst.graph.num_vertices());
    const SourceSet sampled = sample_source_set(inst.graph, 1);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ShortcutSet hset = sourcewise_shortcut(inst.graph, sampled, seed);
      const std::uint32_t sw = sourcewise_diameter(inst.graph, hset, sampled);
      worst_edge_factor = std::max(
          worst_edge_factor, static_cast<double>(hset.size()) /
                                 (inst.graph.num_vertices() * log_base * log_base));
      worst_diam_factor = std::max(
          worst_diam_factor,
          sw / (std::sqrt(sampled.vertices.size()) * log_base * log_base));
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Graph dag = random_dag(300, 0.015, 100 + seed);
      Rng rng(seed);
      SourceSet sources;
      for (std::uint64_t v : rng.sample_without_replacement(300, 24))
        sources.vertices.push_back(static_cast<VertexId>(v));
      const double log_n = std::log2(300.0);
      const ShortcutSet hset = sourcewise_shortcut(dag, sources, seed);
      const std::uint32_t sw = sourcewise_diameter(dag, hset, sources);
      const std::uint32_t before = sourcewise_diameter(dag, {}, sources);
      pass = pass && sw <= before;
      worst_edge_factor =
          std::max(worst_edge_factor,
                   static_cast<double>(hset.size()) / (300 * log_n * log_n));
      worst_diam_factor = std::max(
          worst_diam_factor,
          sw / (std::sqrt(sources.vertices.size()) * log_n * log_n));
    }
    pass = pass && worst_edge_factor <= kSourcewiseEdgeFactor &&
           worst_diam_factor <= kSourcewiseDiameterFactor;
    h.criterion(12, "sourcewise shortcut budget and diameter", pass,
                format("edge factor %.4f <= %.2f, diameter factor %.4f <= %.2f",
                       worst_edge_factor, kSourcewiseEdgeFactor,
                       worst_diam_factor, kSourcewiseDiameterFactor));
  }

  // 13 — golden artifacts and seeded replay
  {
    bool pass = true;
    std::string detail = "byte-identical";
    {
      const Instance inst = build_base({.r = 4, .d = 1});
      std::ostringstream graph_os, paths_os;
      write_graph(graph_os, inst.graph);
      write_paths(paths_os, inst.paths, 1);
      pass = pass && graph_os.str() == read_file(golden_dir + "/base_r4.graph");
      pass = pass &&
             paths_os.str() == read_file(golden_dir + "/base_r4.graph.paths");
    }
    {
      const Instance inst = build_gd({.r = 2, .d = 2});
      std::ostringstream graph_os, paths_os;
      write_graph(graph_os, inst.graph);
      write_paths(paths_os, inst.paths, 2);
      pass =
          pass && graph_os.str() == read_file(golden_dir + "/gd_d2_r2.graph");
      pass = pass && paths_os.str() ==
                         read_file(golden_dir + "/gd_d2_r2.graph.paths");
    }
    if (!pass) detail = "golden mismatch";
    {
      const Graph path = long_path(256);
      const ShortcutSet a = folklore_shortcut(path, 16, 7);
      const ShortcutSet b = folklore_shortcut(path, 16, 7);
      std::ostringstream sa, sb;
      write_shortcuts(sa, a);
      write_shortcuts(sb, b);
      if (sa.str() != sb.str()) {
        pass = false;
        detail = "folklore replay diverged";
      }
      const Instance inst = build_base({.r = 2, .d = 1});
      const PotentialReport ra = adversary_run(
          inst.graph, inst.paths, 4, AdversaryStrategy::kRandomClosure, 5, {});
      const PotentialReport rb = adversary_run(
          inst.graph, inst.paths, 4, AdversaryStrategy::kRandomClosure, 5, {});
      if (ra.added != rb.added) {
        pass = false;
        detail = "adversary replay diverged";
      }
    }
    h.criterion(13, "golden files and seeded replay", pass, detail);
  }

  if (h.failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", h.failures);
  }
  return h.failures;
}
