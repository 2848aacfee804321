#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "slab/errors.hpp"

namespace slab {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Path counts in a DAG can be exponential in the layer count, hence
// arbitrary precision.
using PathCount = boost::multiprecision::cpp_int;

inline constexpr std::uint32_t kUnreachable =
    std::numeric_limits<std::uint32_t>::max();

// Exact unweighted shortest-path distances from one source.
struct DistanceMap {
  VertexId source = 0;
  std::vector<std::uint32_t> dist;  // kUnreachable where no path exists

  bool reachable(VertexId v) const { return dist[v] != kUnreachable; }
};

// A designated subset of vertices (the "S" of sourcewise queries).
struct SourceSet {
  std::vector<VertexId> vertices;
};

// Immutable directed graph in CSR form, optionally carrying a layered-grid
// layout. Layout convention: vertex ids are dense and layer-major, row-major
// within the per-layer grid (first coordinate slowest). For a layered graph
// every edge goes from layer i to layer i+1; this is validated on
// construction.
//
// All queries are const and safe to run concurrently. The reverse adjacency
// is materialized lazily on first use of in().
class Graph {
 public:
  Graph() = default;

  // General digraph on n vertices.
  Graph(VertexId n, std::vector<Edge> edges);

  // Layered graph: layers * prod(grid_dims) vertices.
  Graph(std::uint32_t layers, std::vector<std::uint32_t> grid_dims,
        std::vector<Edge> edges);

  VertexId num_vertices() const { return n_; }
  std::size_t num_edges() const { return fwd_to_.size(); }

  std::span<const VertexId> out(VertexId u) const;
  std::span<const VertexId> in(VertexId u) const;

  // Edges in CSR order (source ascending, targets in stored order).
  std::vector<Edge> edges() const;

  bool is_layered() const { return layered_; }
  std::uint32_t num_layers() const { return layers_; }
  const std::vector<std::uint32_t>& grid_dims() const { return dims_; }
  std::uint64_t layer_size() const { return layer_size_; }

  std::uint32_t layer_of(VertexId v) const;
  VertexId vertex_at(std::uint32_t layer,
                     std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords_of(VertexId v) const;

 private:
  void build_csr(std::vector<Edge> edges);
  void require_layered() const;

  VertexId n_ = 0;
  std::vector<std::size_t> fwd_off_;
  std::vector<VertexId> fwd_to_;

  bool layered_ = false;
  std::uint32_t layers_ = 0;
  std::vector<std::uint32_t> dims_;
  std::uint64_t layer_size_ = 0;

  struct ReverseAdjacency {
    std::once_flag once;
    std::vector<std::size_t> off;
    std::vector<VertexId> to;
  };
  std::unique_ptr<ReverseAdjacency> rev_ =
      std::make_unique<ReverseAdjacency>();
};

// A set of transitive-closure edges with optional budget accounting.
// add() refuses edges past the budget. Validity against a base graph is a
// batch check (validate), not an insert-time one.
class ShortcutSet {
 public:
  ShortcutSet() = default;
  explicit ShortcutSet(std::size_t budget) : budget_(budget) {}

  // False (and no insert) once the budget is exhausted.
  bool add(Edge e);

  std::span<const Edge> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  std::optional<std::size_t> budget() const { return budget_; }
  bool empty() const { return edges_.empty(); }

  void sort_unique();

  // Checks every edge (u, v) satisfies u != v and v reachable from u in g.
  // Throws InputError naming the first offending edge.
  void validate(const Graph& g) const;

  // CSR overlay over the same vertex set, for union-graph traversals.
  Graph as_overlay(VertexId n) const;

 private:
  std::vector<Edge> edges_;
  std::optional<std::size_t> budget_;
};

// ---- traversal kernels ----------------------------------------------------

// BFS over the union of several graphs sharing one vertex set. dist must have
// size n; it is reset internally. queue is caller-provided scratch.
void bfs_overlay(std::span<const Graph* const> graphs, VertexId source,
                 std::span<std::uint32_t> dist, std::vector<VertexId>& queue);

DistanceMap bfs_distances(const Graph& g, VertexId source);

// Exact number of distinct directed paths u -> v. Requires acyclic input
// (ContractError otherwise). count_paths_from returns counts to every vertex.
PathCount count_paths(const Graph& g, VertexId u, VertexId v);
std::vector<PathCount> count_paths_from(const Graph& g, VertexId source);

// Topological order; ContractError when the graph has a directed cycle.
std::vector<VertexId> topological_order(const Graph& g);
bool is_acyclic(const Graph& g);

// Max shortest-path distance over ordered reachable pairs in G ∪ H
// (unreachable pairs ignored; empty graph gives 0). Exact, BFS from every
// vertex. diameter() runs the sweep in parallel; diameter_serial is the
// reference implementation kept for testing and benchmarking.
std::uint32_t diameter(const Graph& g, const ShortcutSet& h = {});
std::uint32_t diameter_serial(const Graph& g, const ShortcutSet& h = {});

struct DistanceHistogram {
  std::uint32_t diameter = 0;
  // count[d] = number of ordered pairs (u, v), u != v, at distance d >= 1.
  std::vector<std::uint64_t> count;
};
DistanceHistogram distance_histogram(const Graph& g, const ShortcutSet& h = {});

inline constexpr std::size_t kDefaultClosureEdgeGuard = 50'000'000;

// All ordered pairs (u, v), u != v, with v reachable from u. Sorted by
// (source, target). ResourceError past max_edges.
std::vector<Edge> transitive_closure_edges(
    const Graph& g, std::size_t max_edges = kDefaultClosureEdgeGuard);
std::vector<Edge> transitive_closure_edges_serial(
    const Graph& g, std::size_t max_edges = kDefaultClosureEdgeGuard);

// Strongly connected components and their condensation. Component ids are
// assigned by ascending lowest member, so the result is deterministic.
struct SccResult {
  Graph dag;                            // one vertex per component
  std::vector<VertexId> component;      // original vertex -> component id
  std::vector<VertexId> representative; // component id -> lowest member
};
SccResult scc_condense(const Graph& g);

}  // namespace slab
