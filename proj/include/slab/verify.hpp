#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slab/construct.hpp"
#include "slab/graph.hpp"

namespace slab {

// Outcome of one exhaustive structural check. pass() iff no violations were
// recorded; max_ratio is the largest observed quantity relative to the bound
// under test (see each verifier for its exact meaning).
struct VerificationReport {
  std::string lemma;
  std::uint64_t checked = 0;
  std::vector<std::string> violations;
  double max_ratio = 0.0;

  bool pass() const { return violations.empty(); }
};

// Every critical path must be the unique directed path between its
// endpoints: count_paths(s, t) == 1 for each. max_ratio is the largest
// path count seen (1.0 on pass).
VerificationReport verify_unique_paths(const Graph& g,
                                       const std::vector<CriticalPath>& paths);

// Critical paths sharing a threshold vector must be pairwise vertex-disjoint.
// Equivalent per-layer statement: within one threshold group all walk
// vertices of a layer are distinct. Exact duplicates of a (start, thresholds)
// descriptor are collapsed before checking. max_ratio is the largest number
// of walks meeting in one vertex (1.0 on pass).
VerificationReport verify_vertex_disjoint(
    const Graph& g, const std::vector<CriticalPath>& paths);

struct OverlapOptions {
  std::uint32_t max_r_d1 = 16;  // largest r accepted at d = 1
  std::uint32_t max_r_hd = 4;   // largest r accepted at d >= 2
};

// Subpath overlap bound. For every window (start layer a, length g >= 1) of
// every critical walk, counts how many critical walks contain that exact
// vertex sequence. For d = 1 asserts count <= 8r/g and reports
// max_ratio = max count*g / (8r). For d >= 2 no fixed constant is asserted;
// max_ratio = max count*(g/r)^d is reported for regression pinning.
// Windows are grouped by rolling fingerprints; fingerprint collisions are
// resolved by full sequence comparison, so the check is exact.
VerificationReport verify_overlap_bound(const Graph& g,
                                        const std::vector<CriticalPath>& paths,
                                        const OverlapOptions& options = {});

// Walk-level entries, used directly by mutation tests: each entry is a group
// key (the threshold vector) plus a derived walk.
struct WalkEntry {
  std::vector<std::uint32_t> key;
  std::vector<VertexId> walk;
};
VerificationReport verify_vertex_disjoint_walks(
    const std::vector<WalkEntry>& entries);
VerificationReport verify_overlap_bound_walks(
    const std::vector<std::vector<VertexId>>& walks, std::uint32_t r,
    std::uint32_t d);

}  // namespace slab
