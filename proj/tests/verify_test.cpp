#include <doctest.h>

#include <map>
#include <set>

#include "slab/verify.hpp"
#include "test_util.hpp"

using namespace slab;
using namespace slab::testutil;

namespace {

// Base instance with one duplicated step vector injected between layers 1
// and 2: the extra (1, 0) edges give every s=1 path a second route.
Graph mutant_duplicate_vector(const Instance& inst) {
  const Graph& g = inst.graph;
  std::vector<Edge> edges = g.edges();
  const std::vector<std::uint32_t> dims = g.grid_dims();
  for (std::uint32_t x1 = 0; x1 + 1 < dims[0]; ++x1) {
    for (std::uint32_t x2 = 0; x2 < dims[1]; ++x2) {
      const std::uint32_t from[2] = {x1, x2};
      const std::uint32_t to[2] = {x1 + 1, x2};
      edges.emplace_back(g.vertex_at(1, from), g.vertex_at(2, to));
    }
  }
  return Graph(g.num_layers(), dims, std::move(edges));
}

// Window containment counts by direct sequence comparison, the oracle for
// the fingerprint-based verifier.
double overlap_max_ratio_oracle(const Graph& g,
                                const std::vector<CriticalPath>& paths,
                                std::uint32_t r) {
  std::vector<std::vector<VertexId>> walks;
  for (const CriticalPath& p : paths) walks.push_back(critical_walk(g, p));
  const std::size_t layers = g.num_layers();
  double max_ratio = 0.0;
  for (std::size_t len = 1; len < layers; ++len) {
    for (std::size_t a = 0; a + len < layers; ++a) {
      std::map<std::vector<VertexId>, std::uint64_t> counts;
      for (const std::vector<VertexId>& w : walks) {
        ++counts[std::vector<VertexId>(w.begin() + a,
                                       w.begin() + a + len + 1)];
      }
      for (const auto& [window, count] : counts)
        max_ratio = std::max(
            max_ratio, static_cast<double>(count) * len / (8.0 * r));
    }
  }
  return max_ratio;
}

}  // namespace

TEST_CASE("unique paths: generated instances pass exhaustively") {
  const Instance base = build_base({.r = 4, .d = 1});
  const VerificationReport r1 = verify_unique_paths(base.graph, base.paths);
  CHECK(r1.pass());
  CHECK(r1.checked == 256);
  CHECK(r1.max_ratio == 1.0);

  const Instance gd = build_gd({.r = 2, .d = 2});
  const VerificationReport r2 = verify_unique_paths(gd.graph, gd.paths);
  CHECK(r2.pass());
  CHECK(r2.checked == 64);
}

TEST_CASE("unique paths: duplicated-vector mutant is rejected") {
  const Instance base = build_base({.r = 4, .d = 1});
  const Graph mutant = mutant_duplicate_vector(base);
  const VerificationReport report = verify_unique_paths(mutant, base.paths);
  CHECK_FALSE(report.pass());
  CHECK(report.max_ratio > 1.0);
}

TEST_CASE("vertex disjointness: generated instances pass") {
  const Instance base = build_base({.r = 4, .d = 1});
  const VerificationReport r1 = verify_vertex_disjoint(base.graph, base.paths);
  CHECK(r1.pass());
  CHECK(r1.checked == 256);

  const Instance gd = build_gd({.r = 2, .d = 2});
  CHECK(verify_vertex_disjoint(gd.graph, gd.paths).pass());
}

TEST_CASE("vertex disjointness: identical descriptors are collapsed") {
  const Instance base = build_base({.r = 2, .d = 1});
  std::vector<CriticalPath> doubled = base.paths;
  doubled.insert(doubled.end(), base.paths.begin(), base.paths.end());
  const VerificationReport report =
      verify_vertex_disjoint(base.graph, doubled);
  CHECK(report.pass());
  CHECK(report.checked == base.paths.size());
}

TEST_CASE("vertex disjointness: per-layer distinctness equals disjointness") {
  const Instance base = build_base({.r = 4, .d = 1});
  // within one threshold group, count distinct vertices per layer by hand
  std::vector<std::vector<VertexId>> group;
  for (const CriticalPath& p : base.paths)
    if (p.thresholds[0] == 2) group.push_back(critical_walk(base.graph, p));
  REQUIRE(group.size() == 64);
  for (std::size_t layer = 0; layer < base.graph.num_layers(); ++layer) {
    std::set<VertexId> at_layer;
    for (const std::vector<VertexId>& w : group) at_layer.insert(w[layer]);
    CHECK(at_layer.size() == group.size());
  }
}

TEST_CASE("vertex disjointness: colliding walks are rejected") {
  // two walks under one key meeting in the middle vertex
  const std::vector<WalkEntry> entries{
      {{2}, {0, 5, 9}},
      {{2}, {1, 5, 10}},
  };
  const VerificationReport report = verify_vertex_disjoint_walks(entries);
  CHECK_FALSE(report.pass());
  CHECK(report.max_ratio == 2.0);
  CHECK(report.violations.size() == 1);
}

TEST_CASE("overlap bound: d=1 instances pass and match the oracle") {
  for (std::uint32_t r : {2u, 4u}) {
    const Instance inst = build_base({.r = r, .d = 1});
    const VerificationReport report =
        verify_overlap_bound(inst.graph, inst.paths);
    CHECK(report.pass());
    CHECK(report.max_ratio <= 1.0);
    CHECK(report.max_ratio ==
          doctest::Approx(overlap_max_ratio_oracle(inst.graph, inst.paths, r)));
  }
}

TEST_CASE("overlap bound: d=2 reports the empirical constant") {
  const Instance inst = build_gd({.r = 2, .d = 2});
  const VerificationReport report =
      verify_overlap_bound(inst.graph, inst.paths);
  CHECK(report.pass());  // no fixed constant asserted at d >= 2
  CHECK(report.max_ratio > 0.0);
}

TEST_CASE("overlap bound: duplicated paths overflow the bound") {
  const Instance inst = build_base({.r = 2, .d = 1});
  std::vector<CriticalPath> mutated = inst.paths;
  for (int i = 0; i < 16; ++i) mutated.push_back(inst.paths.front());
  const VerificationReport report =
      verify_overlap_bound(inst.graph, mutated);
  CHECK_FALSE(report.pass());
}

TEST_CASE("overlap bound: scale guard") {
  const Instance inst = build_base({.r = 8, .d = 1});
  OverlapOptions options;
  options.max_r_d1 = 4;
  CHECK_THROWS_AS(verify_overlap_bound(inst.graph, inst.paths, options),
                  ResourceError);
}
