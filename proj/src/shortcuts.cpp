#include "slab/shortcuts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "slab/rng.hpp"

namespace slab {

StarReduction scc_star_reduction(const Graph& g) {
  SccResult scc = scc_condense(g);
  StarReduction result;
  result.dag = std::move(scc.dag);
  result.component = std::move(scc.component);
  result.representative = std::move(scc.representative);
  const VertexId n = g.num_vertices();
  for (VertexId v = 0; v < n; ++v) {
    const VertexId hub = result.representative[result.component[v]];
    if (v != hub) {
      result.star_edges.emplace_back(v, hub);
      result.star_edges.emplace_back(hub, v);
    }
  }
  std::sort(result.star_edges.begin(), result.star_edges.end());
  return result;
}

namespace {

void diam2_recurse(std::uint32_t lo, std::uint32_t hi,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
  if (hi - lo + 1 <= 2) return;
  const std::uint32_t mid = lo + (hi - lo) / 2;
  for (std::uint32_t u = lo; u + 1 < mid; ++u) out.emplace_back(u, mid);
  for (std::uint32_t v = mid + 2; v <= hi; ++v) out.emplace_back(mid, v);
  if (mid > lo) diam2_recurse(lo, mid - 1, out);
  if (mid < hi) diam2_recurse(mid + 1, hi, out);
}

std::uint32_t ceil_log2(std::uint32_t x) {
  std::uint32_t bits = 0;
  while ((1ull << bits) < x) ++bits;
  return bits;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> shortcut_path_diam2(
    std::uint32_t length) {
  if (length < 1) throw InputError("chain length must be >= 1");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (length <= 2) return out;
  diam2_recurse(0, length - 1, out);
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> shortcut_path_sparse(
    std::uint32_t length) {
  if (length < 1) throw InputError("chain length must be >= 1");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (length <= 2) return out;
  const std::uint32_t spacing = ceil_log2(length);
  const std::uint32_t sampled = (length + spacing - 1) / spacing;
  // The sampled positions form their own chain: bridge consecutive ones so
  // the diam-2 scheme's implicit chain hops cost one edge, not `spacing`.
  for (std::uint32_t t = 0; t + 1 < sampled; ++t)
    out.emplace_back(t * spacing, (t + 1) * spacing);
  for (const auto& [a, b] : shortcut_path_diam2(sampled))
    out.emplace_back(a * spacing, b * spacing);
  return out;
}

ChainDecomposition chain_antichain_decompose(const Graph& dag,
                                             std::size_t ell_target,
                                             std::size_t max_vertices) {
  if (ell_target < 1) throw InputError("chain target must be >= 1");
  const VertexId n = dag.num_vertices();
  if (n > max_vertices)
    throw ResourceError("chain decomposition capped at " +
                        std::to_string(max_vertices) + " vertices");
  const std::vector<VertexId> topo = topological_order(dag);

  // Reachability closure as bitsets: pred[v] holds every vertex that reaches
  // v. Chains live in the closure order, so the longest-chain DP must see
  // closure predecessors, not just direct ones.
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::uint64_t> pred(static_cast<std::size_t>(n) * words, 0);
  auto pred_row = [&](VertexId v) { return pred.data() + v * words; };
  for (VertexId u : topo) {
    for (VertexId v : dag.out(u)) {
      std::uint64_t* pv = pred_row(v);
      const std::uint64_t* pu = pred_row(u);
      for (std::size_t w = 0; w < words; ++w) pv[w] |= pu[w];
      pv[u / 64] |= 1ull << (u % 64);
    }
  }

  std::vector<std::uint64_t> remaining(words, 0);
  for (VertexId v = 0; v < n; ++v) remaining[v / 64] |= 1ull << (v % 64);
  std::size_t num_remaining = n;

  std::vector<std::uint32_t> height(n);
  std::vector<VertexId> parent(n);
  auto recompute_heights = [&]() {
    for (VertexId v : topo) {
      if (!(remaining[v / 64] >> (v % 64) & 1)) continue;
      std::uint32_t best = 0;
      VertexId best_parent = n;
      const std::uint64_t* pv = pred_row(v);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = pv[w] & remaining[w];
        while (bits) {
          const VertexId u =
              static_cast<VertexId>(w * 64 + std::countr_zero(bits));
          bits &= bits - 1;
          if (height[u] > best) {
            best = height[u];
            best_parent = u;
          }
        }
      }
      height[v] = best + 1;
      parent[v] = best_parent;
    }
  };

  ChainDecomposition result;
  result.ell_target = ell_target;
  while (result.chains.size() < ell_target && num_remaining > 0) {
    recompute_heights();
    VertexId tail = n;
    std::uint32_t best = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (!(remaining[v / 64] >> (v % 64) & 1)) continue;
      if (height[v] > best) {
        best = height[v];
        tail = v;
      }
    }
    std::vector<VertexId> chain;
    for (VertexId v = tail; v != n; v = parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    for (VertexId v : chain) {
      remaining[v / 64] &= ~(1ull << (v % 64));
      --num_remaining;
    }
    result.chains.push_back(std::move(chain));
  }

  if (num_remaining > 0) {
    recompute_heights();
    std::uint32_t max_height = 0;
    for (VertexId v = 0; v < n; ++v)
      if (remaining[v / 64] >> (v % 64) & 1)
        max_height = std::max(max_height, height[v]);
    result.antichains.resize(max_height);
    for (VertexId v = 0; v < n; ++v)
      if (remaining[v / 64] >> (v % 64) & 1)
        result.antichains[height[v] - 1].push_back(v);
  }
  return result;
}

ShortcutSet folklore_shortcut(const Graph& g, std::uint32_t target_diameter,
                              std::uint64_t seed, FolkloreConfig config) {
  if (target_diameter < 1) throw InputError("target diameter must be >= 1");
  ShortcutSet h;
  const VertexId n = g.num_vertices();
  if (n < 2) return h;
  const double raw = config.alpha * static_cast<double>(n) *
                     std::log(static_cast<double>(n)) / target_diameter;
  const std::uint64_t sample_size =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(raw)), n);
  if (sample_size <= 1) return h;

  Rng rng(seed);
  const std::vector<std::uint64_t> sampled =
      rng.sample_without_replacement(n, sample_size);
  std::vector<bool> in_sample(n, false);
  for (std::uint64_t v : sampled) in_sample[v] = true;

  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue, hits;
  for (std::uint64_t u : sampled) {
    const Graph* base = &g;
    bfs_overlay({&base, 1}, static_cast<VertexId>(u), dist, queue);
    hits.clear();
    for (VertexId v : queue)
      if (v != u && in_sample[v]) hits.push_back(v);
    std::sort(hits.begin(), hits.end());
    for (VertexId v : hits) h.add({static_cast<VertexId>(u), v});
  }
  if (h.size() > config.max_closure_edges)
    throw ResourceError("folklore shortcut set exceeds the size guard");
  return h;
}

ShortcutSet sourcewise_shortcut(const Graph& g, const SourceSet& sources,
                                std::uint64_t seed, SourcewiseConfig config) {
  if (sources.vertices.empty())
    throw InputError("sourcewise shortcutting needs a non-empty source set");
  const VertexId n = g.num_vertices();
  for (VertexId s : sources.vertices)
    if (s >= n) throw InputError("source vertex out of range");

  StarReduction star = scc_star_reduction(g);
  const Graph& dag = star.dag;
  const VertexId nc = dag.num_vertices();

  const double log_n = std::log2(static_cast<double>(std::max<VertexId>(n, 2)));
  const std::uint32_t target_diameter = std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(std::ceil(
             config.beta * std::sqrt(static_cast<double>(
                               sources.vertices.size())) * log_n)));
  const std::size_t ell = std::clamp<std::size_t>(
      (16ull * nc + target_diameter - 1) / target_diameter, 1, nc);

  const ChainDecomposition decomposition = chain_antichain_decompose(
      dag, ell, config.max_decompose_vertices);

  ShortcutSet h;
  for (const Edge& e : star.star_edges) h.add(e);

  auto original = [&](VertexId dag_vertex) {
    return star.representative[dag_vertex];
  };
  for (const std::vector<VertexId>& chain : decomposition.chains) {
    // Chain elements are closure-ordered, not necessarily adjacent; the
    // backbone pairs make the chain walkable before the sparse scheme is
    // applied on top of it.
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const VertexId a = original(chain[i]), b = original(chain[i + 1]);
      const std::span<const VertexId> out = dag.out(chain[i]);
      if (std::find(out.begin(), out.end(), chain[i + 1]) == out.end())
        h.add({a, b});
    }
    for (const auto& [i, j] :
         shortcut_path_sparse(static_cast<std::uint32_t>(chain.size())))
      h.add({original(chain[i]), original(chain[j])});
  }

  // Chain sampling consumes one draw per chain, in chain order.
  Rng rng(seed);
  const double keep_probability =
      std::min(1.0, config.gamma * log_n / target_diameter);
  std::vector<std::size_t> sampled_chains;
  for (std::size_t c = 0; c < decomposition.chains.size(); ++c)
    if (rng.bernoulli(keep_probability)) sampled_chains.push_back(c);

  std::vector<std::uint32_t> dist(nc);
  std::vector<VertexId> queue;
  for (VertexId s : sources.vertices) {
    const Graph* base = &dag;
    bfs_overlay({&base, 1}, star.component[s], dist, queue);
    for (std::size_t c : sampled_chains) {
      for (VertexId v : decomposition.chains[c]) {
        if (dist[v] != kUnreachable) {
          if (original(v) != s) h.add({s, original(v)});
          break;
        }
      }
    }
  }
  h.sort_unique();
  return h;
}

namespace {

std::uint32_t sourcewise_diameter_impl(const Graph& g, const ShortcutSet& h,
                                       const SourceSet& sources,
                                       bool parallel) {
  const VertexId n = g.num_vertices();
  if (sources.vertices.empty() || n == 0) return 0;
  for (VertexId s : sources.vertices)
    if (s >= n) throw InputError("source vertex out of range");
  const Graph hg = h.empty() ? Graph() : h.as_overlay(n);
  const Graph* overlay_arr[2] = {&g, &hg};
  const std::span<const Graph* const> overlay(overlay_arr,
                                              h.empty() ? 1u : 2u);
  std::uint32_t best = 0;
  if (!parallel) {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    for (VertexId s : sources.vertices) {
      bfs_overlay(overlay, s, dist, queue);
      for (VertexId v : queue)
        if (dist[v] != kUnreachable) best = std::max(best, dist[v]);
    }
    return best;
  }
#pragma omp parallel
  {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    std::uint32_t local = 0;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0;
         i < static_cast<std::int64_t>(sources.vertices.size()); ++i) {
      bfs_overlay(overlay, sources.vertices[i], dist, queue);
      for (VertexId v : queue)
        if (dist[v] != kUnreachable) local = std::max(local, dist[v]);
    }
#pragma omp critical
    best = std::max(best, local);
  }
  return best;
}

}  // namespace

std::uint32_t sourcewise_diameter(const Graph& g, const ShortcutSet& h,
                                  const SourceSet& sources) {
  return sourcewise_diameter_impl(g, h, sources, true);
}

std::uint32_t sourcewise_diameter_serial(const Graph& g, const ShortcutSet& h,
                                         const SourceSet& sources) {
  return sourcewise_diameter_impl(g, h, sources, false);
}

}  // namespace slab
