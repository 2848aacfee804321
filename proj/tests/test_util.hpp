#pragma once

#include <cstdint>
#include <vector>

#include "slab/graph.hpp"
#include "slab/rng.hpp"

namespace slab::testutil {

// Reachability closure by Warshall's algorithm over a dense boolean matrix;
// deliberately independent of the library's BFS code paths.
inline std::vector<std::vector<bool>> reachability_oracle(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : g.out(u)) reach[u][v] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  return reach;
}

// Exhaustive DFS path enumeration; only for tiny acyclic graphs.
inline std::uint64_t count_paths_bruteforce(const Graph& g, VertexId u,
                                            VertexId v) {
  if (u == v) return 1;
  std::uint64_t total = 0;
  for (VertexId w : g.out(u)) total += count_paths_bruteforce(g, w, v);
  return total;
}

// Directed path 0 -> 1 -> ... -> n-1.
inline Graph path_graph(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

// Random DAG: every forward pair (i, j), i < j, kept with probability p.
inline Graph random_dag(VertexId n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

// Random digraph, cycles allowed.
inline Graph random_digraph(VertexId n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if (i != j && rng.bernoulli(p)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

}  // namespace slab::testutil
