#include "slab/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace slab {

namespace {

std::uint64_t product_checked(const std::vector<std::uint32_t>& dims) {
  std::uint64_t p = 1;
  for (std::uint32_t d : dims) {
    if (d == 0) throw InputError("grid dimension must be positive");
    p *= d;
    if (p > std::numeric_limits<VertexId>::max())
      throw ResourceError("grid too large for dense vertex ids");
  }
  return p;
}

}  // namespace

Graph::Graph(VertexId n, std::vector<Edge> edges) : n_(n) {
  build_csr(std::move(edges));
}

Graph::Graph(std::uint32_t layers, std::vector<std::uint32_t> grid_dims,
             std::vector<Edge> edges)
    : layered_(true), layers_(layers), dims_(std::move(grid_dims)) {
  if (layers == 0) throw InputError("layered graph needs at least one layer");
  if (dims_.empty()) throw InputError("layered graph needs grid dimensions");
  layer_size_ = product_checked(dims_);
  const std::uint64_t n = layer_size_ * layers;
  if (n > std::numeric_limits<VertexId>::max())
    throw ResourceError("layered graph too large for dense vertex ids");
  n_ = static_cast<VertexId>(n);
  for (const Edge& e : edges) {
    if (e.first >= n_ || e.second >= n_)
      throw InputError("edge endpoint out of range");
    if (e.second / layer_size_ != e.first / layer_size_ + 1)
      throw InputError("layered edge must go from layer i to layer i+1");
  }
  build_csr(std::move(edges));
}

void Graph::build_csr(std::vector<Edge> edges) {
  fwd_off_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const Edge& e : edges) {
    if (e.first >= n_ || e.second >= n_)
      throw InputError("edge endpoint out of range");
    ++fwd_off_[e.first + 1];
  }
  for (std::size_t i = 1; i < fwd_off_.size(); ++i)
    fwd_off_[i] += fwd_off_[i - 1];
  fwd_to_.resize(edges.size());
  std::vector<std::size_t> cursor(fwd_off_.begin(), fwd_off_.end() - 1);
  for (const Edge& e : edges) fwd_to_[cursor[e.first]++] = e.second;
}

std::span<const VertexId> Graph::out(VertexId u) const {
  return {fwd_to_.data() + fwd_off_[u], fwd_off_[u + 1] - fwd_off_[u]};
}

std::span<const VertexId> Graph::in(VertexId u) const {
  std::call_once(rev_->once, [this] {
    rev_->off.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (VertexId v : fwd_to_) ++rev_->off[v + 1];
    for (std::size_t i = 1; i < rev_->off.size(); ++i)
      rev_->off[i] += rev_->off[i - 1];
    rev_->to.resize(fwd_to_.size());
    std::vector<std::size_t> cursor(rev_->off.begin(), rev_->off.end() - 1);
    for (VertexId s = 0; s < n_; ++s)
      for (VertexId t : out(s)) rev_->to[cursor[t]++] = s;
  });
  return {rev_->to.data() + rev_->off[u], rev_->off[u + 1] - rev_->off[u]};
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(num_edges());
  for (VertexId u = 0; u < n_; ++u)
    for (VertexId v : out(u)) result.emplace_back(u, v);
  return result;
}

void Graph::require_layered() const {
  if (!layered_) throw ContractError("operation requires a layered graph");
}

std::uint32_t Graph::layer_of(VertexId v) const {
  require_layered();
  return static_cast<std::uint32_t>(v / layer_size_);
}

VertexId Graph::vertex_at(std::uint32_t layer,
                          std::span<const std::uint32_t> coords) const {
  require_layered();
  if (layer >= layers_) throw InputError("layer out of range");
  if (coords.size() != dims_.size())
    throw InputError("coordinate arity mismatch");
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (coords[i] >= dims_[i]) throw InputError("coordinate out of grid");
    offset = offset * dims_[i] + coords[i];
  }
  return static_cast<VertexId>(layer * layer_size_ + offset);
}

std::vector<std::uint32_t> Graph::coords_of(VertexId v) const {
  require_layered();
  if (v >= n_) throw InputError("vertex id out of range");
  std::uint64_t offset = v % layer_size_;
  std::vector<std::uint32_t> coords(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    coords[i] = static_cast<std::uint32_t>(offset % dims_[i]);
    offset /= dims_[i];
  }
  return coords;
}

// ---- ShortcutSet -----------------------------------------------------------

bool ShortcutSet::add(Edge e) {
  if (budget_ && edges_.size() >= *budget_) return false;
  edges_.push_back(e);
  return true;
}

void ShortcutSet::sort_unique() {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

void ShortcutSet::validate(const Graph& g) const {
  const VertexId n = g.num_vertices();
  std::vector<Edge> sorted(edges_.begin(), edges_.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const VertexId u = sorted[i].first;
    if (u >= n) {
      throw InputError("shortcut edge (" + std::to_string(u) + ", " +
                       std::to_string(sorted[i].second) +
                       ") has an out-of-range endpoint");
    }
    const Graph* base = &g;
    bfs_overlay({&base, 1}, u, dist, queue);
    for (; i < sorted.size() && sorted[i].first == u; ++i) {
      const VertexId v = sorted[i].second;
      if (v >= n || u == v || dist[v] == kUnreachable) {
        throw InputError("shortcut edge (" + std::to_string(u) + ", " +
                         std::to_string(v) +
                         ") is not in the transitive closure");
      }
    }
  }
}

Graph ShortcutSet::as_overlay(VertexId n) const {
  return Graph(n, std::vector<Edge>(edges_.begin(), edges_.end()));
}

// ---- traversal kernels ----------------------------------------------------

void bfs_overlay(std::span<const Graph* const> graphs, VertexId source,
                 std::span<std::uint32_t> dist, std::vector<VertexId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    const std::uint32_t next = dist[u] + 1;
    for (const Graph* g : graphs) {
      for (VertexId v : g->out(u)) {
        if (dist[v] == kUnreachable) {
          dist[v] = next;
          queue.push_back(v);
        }
      }
    }
  }
}

DistanceMap bfs_distances(const Graph& g, VertexId source) {
  if (source >= g.num_vertices()) throw InputError("source vertex out of range");
  DistanceMap map;
  map.source = source;
  map.dist.resize(g.num_vertices());
  std::vector<VertexId> queue;
  const Graph* base = &g;
  bfs_overlay({&base, 1}, source, map.dist, queue);
  return map;
}

std::vector<VertexId> topological_order(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<std::uint32_t> indegree(n, 0);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : g.out(u)) ++indegree[v];
  std::vector<VertexId> order;
  order.reserve(n);
  for (VertexId u = 0; u < n; ++u)
    if (indegree[u] == 0) order.push_back(u);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (VertexId v : g.out(order[head]))
      if (--indegree[v] == 0) order.push_back(v);
  }
  if (order.size() != n)
    throw ContractError("graph has a directed cycle");
  return order;
}

bool is_acyclic(const Graph& g) {
  try {
    topological_order(g);
    return true;
  } catch (const ContractError&) {
    return false;
  }
}

std::vector<PathCount> count_paths_from(const Graph& g, VertexId source) {
  if (source >= g.num_vertices()) throw InputError("source vertex out of range");
  const std::vector<VertexId> order = topological_order(g);
  std::vector<PathCount> count(g.num_vertices());
  count[source] = 1;
  for (VertexId u : order) {
    if (count[u] == 0) continue;
    for (VertexId v : g.out(u)) count[v] += count[u];
  }
  return count;
}

PathCount count_paths(const Graph& g, VertexId u, VertexId v) {
  if (u >= g.num_vertices() || v >= g.num_vertices())
    throw InputError("vertex id out of range");
  if (u == v) {
    topological_order(g);  // still enforce the acyclicity contract
    return 1;              // the empty path
  }
  return count_paths_from(g, u)[v];
}

namespace {

struct SweepResult {
  std::uint32_t eccentricity_max = 0;
  std::vector<std::uint64_t> histogram;  // histogram[d] for d >= 1
};

void merge_histogram(std::vector<std::uint64_t>& into,
                     const std::vector<std::uint64_t>& from) {
  if (from.size() > into.size()) into.resize(from.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
}

void sweep_source(std::span<const Graph* const> overlay, VertexId s,
                  std::span<std::uint32_t> dist, std::vector<VertexId>& queue,
                  SweepResult& acc, bool with_histogram) {
  bfs_overlay(overlay, s, dist, queue);
  for (VertexId v : queue) {
    const std::uint32_t d = dist[v];
    if (d == 0) continue;
    acc.eccentricity_max = std::max(acc.eccentricity_max, d);
    if (with_histogram) {
      if (d >= acc.histogram.size()) acc.histogram.resize(d + 1, 0);
      ++acc.histogram[d];
    }
  }
}

SweepResult all_sources_sweep(const Graph& g, const ShortcutSet& h,
                              bool with_histogram, bool parallel) {
  const VertexId n = g.num_vertices();
  SweepResult total;
  if (n == 0) return total;
  const Graph hg = h.empty() ? Graph() : h.as_overlay(n);
  const Graph* overlay_arr[2] = {&g, &hg};
  const std::span<const Graph* const> overlay(overlay_arr,
                                              h.empty() ? 1u : 2u);
  if (!parallel) {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    for (VertexId s = 0; s < n; ++s)
      sweep_source(overlay, s, dist, queue, total, with_histogram);
    return total;
  }
#pragma omp parallel
  {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    SweepResult local;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
      sweep_source(overlay, static_cast<VertexId>(s), dist, queue, local,
                   with_histogram);
    }
#pragma omp critical
    {
      total.eccentricity_max =
          std::max(total.eccentricity_max, local.eccentricity_max);
      merge_histogram(total.histogram, local.histogram);
    }
  }
  return total;
}

}  // namespace

std::uint32_t diameter(const Graph& g, const ShortcutSet& h) {
  return all_sources_sweep(g, h, false, true).eccentricity_max;
}

std::uint32_t diameter_serial(const Graph& g, const ShortcutSet& h) {
  return all_sources_sweep(g, h, false, false).eccentricity_max;
}

DistanceHistogram distance_histogram(const Graph& g, const ShortcutSet& h) {
  SweepResult sweep = all_sources_sweep(g, h, true, true);
  DistanceHistogram out;
  out.diameter = sweep.eccentricity_max;
  out.count = std::move(sweep.histogram);
  out.count.resize(static_cast<std::size_t>(out.diameter) + 1, 0);
  return out;
}

namespace {

std::vector<Edge> closure_impl(const Graph& g, std::size_t max_edges,
                               bool parallel) {
  const VertexId n = g.num_vertices();
  std::vector<std::vector<VertexId>> reach(n);

  auto collect = [&](VertexId s, std::span<std::uint32_t> dist,
                     std::vector<VertexId>& queue) {
    const Graph* base = &g;
    bfs_overlay({&base, 1}, s, dist, queue);
    std::vector<VertexId>& row = reach[s];
    row.reserve(queue.size() > 0 ? queue.size() - 1 : 0);
    for (VertexId v : queue)
      if (v != s) row.push_back(v);
    std::sort(row.begin(), row.end());
  };

  if (!parallel) {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    for (VertexId s = 0; s < n; ++s) collect(s, dist, queue);
  } else {
#pragma omp parallel
    {
      std::vector<std::uint32_t> dist(n);
      std::vector<VertexId> queue;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s)
        collect(static_cast<VertexId>(s), dist, queue);
    }
  }

  std::size_t total = 0;
  for (VertexId s = 0; s < n; ++s) total += reach[s].size();
  if (total > max_edges)
    throw ResourceError("transitive closure exceeds the size guard");

  std::vector<Edge> edges;
  edges.reserve(total);
  for (VertexId s = 0; s < n; ++s)
    for (VertexId v : reach[s]) edges.emplace_back(s, v);
  return edges;
}

}  // namespace

std::vector<Edge> transitive_closure_edges(const Graph& g,
                                           std::size_t max_edges) {
  return closure_impl(g, max_edges, true);
}

std::vector<Edge> transitive_closure_edges_serial(const Graph& g,
                                                  std::size_t max_edges) {
  return closure_impl(g, max_edges, false);
}

// ---- strongly connected components ----------------------------------------

SccResult scc_condense(const Graph& g) {
  const VertexId n = g.num_vertices();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::vector<VertexId> comp(n, kUnset);
  std::uint32_t next_index = 0;
  VertexId num_comps = 0;

  // Iterative Tarjan; frames hold (vertex, next out-edge position).
  std::vector<std::pair<VertexId, std::size_t>> frames;
  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    frames.emplace_back(root, 0);
    while (!frames.empty()) {
      const VertexId v = frames.back().first;
      const std::span<const VertexId> targets = g.out(v);
      if (frames.back().second < targets.size()) {
        const VertexId w = targets[frames.back().second++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        for (;;) {
          const VertexId w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = num_comps;
          if (w == v) break;
        }
        ++num_comps;
      }
      frames.pop_back();
      if (!frames.empty()) {
        const VertexId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  // Renumber components by ascending lowest member for determinism.
  std::vector<VertexId> lowest(num_comps, std::numeric_limits<VertexId>::max());
  for (VertexId v = 0; v < n; ++v)
    lowest[comp[v]] = std::min(lowest[comp[v]], v);
  std::vector<VertexId> order(num_comps);
  for (VertexId c = 0; c < num_comps; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return lowest[a] < lowest[b]; });
  std::vector<VertexId> remap(num_comps);
  for (VertexId i = 0; i < num_comps; ++i) remap[order[i]] = i;

  SccResult result;
  result.component.resize(n);
  result.representative.resize(num_comps);
  for (VertexId v = 0; v < n; ++v) result.component[v] = remap[comp[v]];
  for (VertexId c = 0; c < num_comps; ++c)
    result.representative[remap[c]] = lowest[c];

  std::vector<Edge> dag_edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.out(u)) {
      const VertexId cu = result.component[u], cv = result.component[v];
      if (cu != cv) dag_edges.emplace_back(cu, cv);
    }
  }
  std::sort(dag_edges.begin(), dag_edges.end());
  dag_edges.erase(std::unique(dag_edges.begin(), dag_edges.end()),
                  dag_edges.end());
  result.dag = Graph(num_comps, std::move(dag_edges));
  return result;
}

}  // namespace slab
