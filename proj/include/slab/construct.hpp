#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "slab/graph.hpp"
#include "slab/rng.hpp"

namespace slab {

// Scale parameters of the layered lower-bound family. r must be a power of
// two; d >= 1 is the grid dimension minus one (d = 1 is the base family).
struct ConstructionParams {
  std::uint32_t r = 2;
  std::uint32_t d = 1;
};

// Compact critical-path descriptor. The full walk is derived on demand:
// starting at grid point (start, layer 0), the walk crosses every layer and
// takes the nonzero step of layer j exactly when the permutation value
// scheduled there is below thresholds[j mod d].
//
// The derived endpoint sits at coordinates
//   start + (thresholds..., sum_k thresholds[k]*(thresholds[k]-1)/2).
struct CriticalPath {
  std::vector<std::uint32_t> start;       // d spatial coords, then accumulator
  std::vector<std::uint32_t> thresholds;  // per-dimension value in [1, r]
};

struct Instance {
  Graph graph;
  std::vector<CriticalPath> paths;
};

// q[i] = (log2 r)-bit reversal of i. An involution on [0, r).
// InputError unless r is a power of two.
std::vector<std::uint32_t> bit_reversal_permutation(std::uint32_t r);

// Base family (d = 1): r+1 layers over the grid [2r] x [2r^2], one nonzero
// step vector (1, q_i) between layers i and i+1. |V| = 4r^3(r+1),
// |E| <= 8r^4, |P| = r^4.
Instance build_base(const ConstructionParams& params);

// General family: d*r + 1 layers over [2dr]^d x [2dr^2]; the nonzero vector
// of layer j bumps spatial coordinate j mod d and adds q[j / d] to the
// accumulator. |P| = r^(2d+2). With d = 1 this coincides with build_base.
Instance build_gd(const ConstructionParams& params);

// Scale parameters recovered from a generated instance's grid layout.
// InputError when the graph is not a generated lower-bound instance.
struct InstanceParams {
  std::uint32_t r;
  std::uint32_t d;
};
InstanceParams derive_params(const Graph& g);

// The full vertex walk of a critical path: one vertex per layer, consecutive
// vertices joined by graph edges, exactly sum(thresholds) nonzero steps.
std::vector<VertexId> critical_walk(const Graph& g, const CriticalPath& path);

// (start vertex, end vertex) without materializing the walk.
std::pair<VertexId, VertexId> path_endpoints(const Graph& g,
                                             const CriticalPath& path);

// Contraction keeping layers 0, k, 2k, ... (plus the final layer when k does
// not divide it). An edge joins u, v in consecutive kept layers iff u reaches
// v in the input. k = 1 reproduces the input exactly.
Graph path_subsample(const Graph& g, std::int64_t k);

// Independently samples layer-0 vertices with probability
// (log2 n)^2 / r^(d-1), clamped to [0, 1]; probability_override substitutes
// the formula (used by calibration tests). Deterministic per seed.
SourceSet sample_source_set(const Graph& g, std::uint64_t seed,
                            std::optional<double> probability_override = {});

}  // namespace slab
