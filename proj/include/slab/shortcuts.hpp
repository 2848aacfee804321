#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "slab/graph.hpp"

namespace slab {

// Star augmentation of strongly connected components: inside every component
// of size k the lowest-id member becomes a hub and 2(k-1) closure edges make
// the component's internal diameter <= 2. The condensation keeps one
// representative per component.
struct StarReduction {
  Graph dag;                            // condensation
  std::vector<Edge> star_edges;         // original ids, <= 2n in total
  std::vector<VertexId> component;      // original vertex -> dag vertex
  std::vector<VertexId> representative; // dag vertex -> hub (lowest member)
};
StarReduction scc_star_reduction(const Graph& g);

// Divide-and-conquer shortcuts on a chain of `length` positions; pairs are
// (position, position) with the first strictly smaller. Together with the
// chain's own consecutive edges, the hop diameter between any ordered pair of
// positions drops to <= 2. At most length * ceil(log2 length) pairs.
std::vector<std::pair<std::uint32_t, std::uint32_t>> shortcut_path_diam2(
    std::uint32_t length);

// Sparse variant: the diam-2 scheme applied to ceil(length / s) evenly spaced
// positions, s = ceil(log2 length). O(length) pairs; hop diameter
// <= 2 + 2*ceil(log2 length).
std::vector<std::pair<std::uint32_t, std::uint32_t>> shortcut_path_sparse(
    std::uint32_t length);

// Partition of a DAG's vertices into chains (totally ordered by reachability;
// consecutive elements need not be graph edges) and antichains (pairwise
// unreachable). At most 2n / ell_target antichains.
struct ChainDecomposition {
  std::vector<std::vector<VertexId>> chains;
  std::vector<std::vector<VertexId>> antichains;
  std::size_t ell_target = 0;
};

inline constexpr std::size_t kDefaultDecomposeVertexGuard = 20'000;

// Greedy peeling: extracts up to ell_target longest chains of the reachability
// order, then splits the remainder into height-level antichains. After
// extracting ell_target chains the remaining height is at most n / ell_target,
// so the antichain bound holds. ContractError on cyclic input; ResourceError
// past the vertex guard (the reachability closure is materialized as bitsets).
ChainDecomposition chain_antichain_decompose(
    const Graph& dag, std::size_t ell_target,
    std::size_t max_vertices = kDefaultDecomposeVertexGuard);

struct FolkloreConfig {
  double alpha = 3.0;  // sample size multiplier on n ln(n) / D
  std::size_t max_closure_edges = kDefaultClosureEdgeGuard;
};

// Folklore construction: samples ceil(alpha * n * ln n / D) vertices
// uniformly without replacement and adds every transitive-closure pair among
// them. Sample sizes <= 1 yield an empty set.
ShortcutSet folklore_shortcut(const Graph& g, std::uint32_t target_diameter,
                              std::uint64_t seed, FolkloreConfig config = {});

struct SourcewiseConfig {
  double beta = 1.0;   // diameter target multiplier on sqrt(|S|) log2 n
  double gamma = 2.0;  // chain sampling multiplier on log2(n) / D
  std::size_t max_decompose_vertices = kDefaultDecomposeVertexGuard;
};

// Sourcewise pipeline: star-reduce, pick D = ceil(beta sqrt(|S|) log2 n),
// decompose the condensation into ceil(16 n / D) chains, sparse-shortcut each
// chain (its consecutive closure pairs are added so the chain is walkable),
// sample chains with probability min(1, gamma log2(n) / D), and connect every
// source to the first reachable vertex of every sampled chain. Star edges are
// part of the output. InputError on an empty source set.
ShortcutSet sourcewise_shortcut(const Graph& g, const SourceSet& sources,
                                std::uint64_t seed,
                                SourcewiseConfig config = {});

// Max distance over reachable pairs in S x V in G ∪ H; 0 for empty S.
std::uint32_t sourcewise_diameter(const Graph& g, const ShortcutSet& h,
                                  const SourceSet& sources);
std::uint32_t sourcewise_diameter_serial(const Graph& g, const ShortcutSet& h,
                                         const SourceSet& sources);

}  // namespace slab
