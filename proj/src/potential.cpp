#include "slab/potential.hpp"

#include <algorithm>
#include <cassert>

namespace slab {

namespace {

Graph reversed_overlay(VertexId n, std::span<const Edge> edges) {
  std::vector<Edge> rev(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    rev[i] = {edges[i].second, edges[i].first};
  return Graph(n, std::move(rev));
}

void collect_augment_from(const Graph& g, const PotentialConfig& config,
                          VertexId s, std::span<std::uint32_t> dist,
                          std::vector<VertexId>& queue,
                          std::vector<VertexId>& out) {
  const Graph* base = &g;
  bfs_overlay({&base, 1}, s, dist, queue);
  out.clear();
  const std::uint64_t half = g.is_layered() ? g.num_layers() : 0;
  for (VertexId v : queue) {
    if (v == s) continue;
    const bool short_range = dist[v] <= config.c;
    const bool first_half =
        config.half_layer_rule && 2ull * g.layer_of(v) < half;
    if (short_range || first_half) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
}

std::vector<Edge> build_augment_impl(const Graph& g,
                                     const PotentialConfig& config,
                                     bool parallel) {
  if (config.half_layer_rule && !g.is_layered())
    throw InputError("the half-layer rule requires a layered graph");
  const VertexId n = g.num_vertices();
  if (config.c == 0 && !config.half_layer_rule) return {};

  std::vector<std::vector<VertexId>> targets(n);
  if (!parallel) {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    for (VertexId s = 0; s < n; ++s)
      collect_augment_from(g, config, s, dist, queue, targets[s]);
  } else {
#pragma omp parallel
    {
      std::vector<std::uint32_t> dist(n);
      std::vector<VertexId> queue;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s)
        collect_augment_from(g, config, static_cast<VertexId>(s), dist, queue,
                             targets[s]);
    }
  }

  std::size_t total = 0;
  for (VertexId s = 0; s < n; ++s) total += targets[s].size();
  if (total > config.max_augment_edges)
    throw ResourceError("augmentation set exceeds the size guard");
  std::vector<Edge> edges;
  edges.reserve(total);
  for (VertexId s = 0; s < n; ++s)
    for (VertexId v : targets[s]) edges.emplace_back(s, v);
  return edges;
}

}  // namespace

std::vector<Edge> build_augment(const Graph& g, const PotentialConfig& config) {
  return build_augment_impl(g, config, true);
}

std::vector<Edge> build_augment_serial(const Graph& g,
                                       const PotentialConfig& config) {
  return build_augment_impl(g, config, false);
}

PathIndex PathIndex::build(const Graph& g,
                           std::span<const CriticalPath> paths) {
  PathIndex index;
  index.walks.resize(paths.size());
  index.start_of.resize(paths.size());
  index.end_of.resize(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    index.walks[i] = critical_walk(g, paths[i]);
    index.start_of[i] = index.walks[i].front();
    index.end_of[i] = index.walks[i].back();
  }
  const VertexId n = g.num_vertices();
  index.member_off.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const std::vector<VertexId>& walk : index.walks)
    for (VertexId v : walk) ++index.member_off[v + 1];
  for (std::size_t v = 1; v < index.member_off.size(); ++v)
    index.member_off[v] += index.member_off[v - 1];
  index.member.resize(index.member_off.back());
  std::vector<std::size_t> cursor(index.member_off.begin(),
                                  index.member_off.end() - 1);
  for (std::uint32_t p = 0; p < index.walks.size(); ++p) {
    for (std::uint32_t pos = 0; pos < index.walks[p].size(); ++pos) {
      const VertexId v = index.walks[p][pos];
      index.member[cursor[v]++] = {p, pos};
    }
  }
  return index;
}

namespace {

std::uint64_t potential_impl(const Graph& g, std::span<const Edge> eprime,
                             const ShortcutSet& h,
                             std::span<const CriticalPath> paths,
                             bool parallel) {
  const VertexId n = g.num_vertices();
  std::vector<std::pair<VertexId, VertexId>> endpoints(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    endpoints[i] = path_endpoints(g, paths[i]);
  std::sort(endpoints.begin(), endpoints.end());

  std::vector<std::pair<VertexId, std::size_t>> group_starts;  // (start, from)
  for (std::size_t i = 0; i < endpoints.size(); ++i)
    if (i == 0 || endpoints[i].first != endpoints[i - 1].first)
      group_starts.emplace_back(endpoints[i].first, i);

  Graph eg(n, std::vector<Edge>(eprime.begin(), eprime.end()));
  Graph hg = h.as_overlay(n);
  const Graph* overlay_arr[3] = {&g, &eg, &hg};
  const std::span<const Graph* const> overlay(overlay_arr, 3);

  std::uint64_t total = 0;
  auto run_group = [&](std::size_t gi, std::span<std::uint32_t> dist,
                       std::vector<VertexId>& queue) {
    const auto [start, from] = group_starts[gi];
    bfs_overlay(overlay, start, dist, queue);
    std::uint64_t sum = 0;
    for (std::size_t i = from;
         i < endpoints.size() && endpoints[i].first == start; ++i)
      sum += dist[endpoints[i].second];
    return sum;
  };

  if (!parallel) {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue;
    for (std::size_t gi = 0; gi < group_starts.size(); ++gi)
      total += run_group(gi, dist, queue);
  } else {
#pragma omp parallel
    {
      std::vector<std::uint32_t> dist(n);
      std::vector<VertexId> queue;
      std::uint64_t local = 0;
#pragma omp for schedule(dynamic, 4) nowait
      for (std::int64_t gi = 0;
           gi < static_cast<std::int64_t>(group_starts.size()); ++gi)
        local += run_group(static_cast<std::size_t>(gi), dist, queue);
#pragma omp critical
      total += local;
    }
  }
  return total;
}

}  // namespace

std::uint64_t potential(const Graph& g, std::span<const Edge> eprime,
                        const ShortcutSet& h,
                        std::span<const CriticalPath> paths) {
  return potential_impl(g, eprime, h, paths, true);
}

std::uint64_t potential_serial(const Graph& g, std::span<const Edge> eprime,
                               const ShortcutSet& h,
                               std::span<const CriticalPath> paths) {
  return potential_impl(g, eprime, h, paths, false);
}

// ---- PotentialEvaluator -----------------------------------------------------

PotentialEvaluator::PotentialEvaluator(const Graph& g,
                                       std::vector<Edge> eprime,
                                       const PathIndex& index)
    : graph_(&g), index_(&index), eprime_edges_(std::move(eprime)) {
  const VertexId n = g.num_vertices();
  eprime_ = Graph(n, eprime_edges_);
  eprime_rev_ = reversed_overlay(n, eprime_edges_);
  graph_rev_ = reversed_overlay(n, g.edges());

  starts_ = index.start_of;
  std::sort(starts_.begin(), starts_.end());
  starts_.erase(std::unique(starts_.begin(), starts_.end()), starts_.end());
  ends_ = index.end_of;
  std::sort(ends_.begin(), ends_.end());
  ends_.erase(std::unique(ends_.begin(), ends_.end()), ends_.end());
  for (std::uint32_t i = 0; i < starts_.size(); ++i) start_slot_[starts_[i]] = i;
  for (std::uint32_t i = 0; i < ends_.size(); ++i) end_slot_[ends_[i]] = i;
  fwd_dist_.resize(starts_.size());
  bwd_dist_.resize(ends_.size());
  path_dist_.resize(index.walks.size());
  refresh();
}

void PotentialEvaluator::refresh() {
  const VertexId n = graph_->num_vertices();
  shortcut_overlay_ = shortcuts_.as_overlay(n);
  shortcut_rev_ = reversed_overlay(n, shortcuts_.edges());

  const Graph* fwd_arr[3] = {graph_, &eprime_, &shortcut_overlay_};
  const std::span<const Graph* const> fwd(fwd_arr, 3);

#pragma omp parallel
  {
    std::vector<VertexId> queue;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(starts_.size());
         ++i) {
      fwd_dist_[i].resize(n);
      bfs_overlay(fwd, starts_[i], fwd_dist_[i], queue);
    }
  }

  // Backward distances run on the reversed union.
  const Graph* bwd_arr[3] = {&graph_rev_, &eprime_rev_, &shortcut_rev_};
  const std::span<const Graph* const> bwd(bwd_arr, 3);
#pragma omp parallel
  {
    std::vector<VertexId> queue;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ends_.size());
         ++i) {
      bwd_dist_[i].resize(n);
      bfs_overlay(bwd, ends_[i], bwd_dist_[i], queue);
    }
  }

  phi_ = 0;
  for (std::size_t p = 0; p < index_->walks.size(); ++p) {
    path_dist_[p] =
        fwd_dist_[start_slot_.at(index_->start_of[p])][index_->end_of[p]];
    phi_ += path_dist_[p];
  }
}

std::uint32_t PotentialEvaluator::max_pair_distance() const {
  std::uint32_t best = 0;
  for (std::uint32_t d : path_dist_) best = std::max(best, d);
  return best;
}

DropResult PotentialEvaluator::drop_if_added(Edge e) const {
  const auto [u, v] = e;
  DropResult result;
  // Candidate paths are exactly those whose walk passes through both u and v;
  // reachability is unchanged by E' and H, so no other endpoint distance can
  // involve the new edge.
  for (const auto& [p, pos_u] : index_->members_of(u)) {
    bool has_v = false;
    for (const auto& [p2, pos_v] : index_->members_of(v)) {
      if (p2 == p && pos_v > pos_u) {
        has_v = true;
        break;
      }
    }
    if (!has_v) continue;
    const std::uint32_t du =
        fwd_dist_[start_slot_.at(index_->start_of[p])][u];
    const std::uint32_t dv = bwd_dist_[end_slot_.at(index_->end_of[p])][v];
    if (du == kUnreachable || dv == kUnreachable) continue;
    const std::uint32_t via = du + 1 + dv;
    const std::uint32_t old_dist = path_dist_[p];
    if (via < old_dist) {
      result.drop += old_dist - via;
      ++result.affected;
    }
  }
  return result;
}

DropResult PotentialEvaluator::drop_if_added_full_recompute(Edge e) const {
  ShortcutSet with = shortcuts_;
  with.add(e);
  const VertexId n = graph_->num_vertices();
  Graph hg = with.as_overlay(n);
  const Graph* overlay_arr[3] = {graph_, &eprime_, &hg};
  const std::span<const Graph* const> overlay(overlay_arr, 3);
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue;
  std::uint64_t new_phi = 0;
  std::uint64_t affected = 0;
  for (std::uint32_t si = 0; si < starts_.size(); ++si) {
    bfs_overlay(overlay, starts_[si], dist, queue);
    for (std::size_t p = 0; p < index_->walks.size(); ++p) {
      if (index_->start_of[p] != starts_[si]) continue;
      const std::uint32_t d = dist[index_->end_of[p]];
      new_phi += d;
      if (d != path_dist_[p]) ++affected;
    }
  }
  return DropResult{phi_ - new_phi, affected};
}

void PotentialEvaluator::add_edge(Edge e) {
  shortcuts_.add(e);
  refresh();
}

DropResult drop_of_edge(const PotentialEvaluator& evaluator, Edge new_edge) {
  const Graph& g = evaluator.graph();
  const auto [u, v] = new_edge;
  if (u >= g.num_vertices() || v >= g.num_vertices() || u == v)
    throw InputError("new edge is not a transitive-closure pair");
  if (!bfs_distances(g, u).reachable(v))
    throw InputError("new edge is not in the transitive closure");
  return evaluator.drop_if_added(new_edge);
}

DropResult drop_of_edge(const Graph& g, std::span<const Edge> eprime,
                        std::span<const CriticalPath> paths,
                        const ShortcutSet& h, Edge new_edge) {
  const auto [u, v] = new_edge;
  if (u >= g.num_vertices() || v >= g.num_vertices() || u == v)
    throw InputError("new edge is not a transitive-closure pair");
  const DistanceMap from_u = bfs_distances(g, u);
  if (!from_u.reachable(v))
    throw InputError("new edge is not in the transitive closure");
  const PathIndex index = PathIndex::build(g, paths);
  PotentialEvaluator evaluator(
      g, std::vector<Edge>(eprime.begin(), eprime.end()), index);
  for (const Edge& e : h.edges()) evaluator.add_edge(e);
  return evaluator.drop_if_added(new_edge);
}

// ---- adversary --------------------------------------------------------------

AdversaryStrategy parse_strategy(const std::string& name) {
  if (name == "random-closure") return AdversaryStrategy::kRandomClosure;
  if (name == "greedy-max-drop") return AdversaryStrategy::kGreedyMaxDrop;
  if (name == "hitting-set") return AdversaryStrategy::kHittingSet;
  throw InputError("unknown adversary strategy '" + name + "'");
}

std::string strategy_name(AdversaryStrategy strategy) {
  switch (strategy) {
    case AdversaryStrategy::kRandomClosure: return "random-closure";
    case AdversaryStrategy::kGreedyMaxDrop: return "greedy-max-drop";
    case AdversaryStrategy::kHittingSet: return "hitting-set";
  }
  return "?";
}

namespace {

// Distinct walk windows spanning at least two layers; every other closure
// edge has zero drop, so these are the only candidates worth scoring.
std::vector<Edge> candidate_windows(const PathIndex& index) {
  std::vector<Edge> candidates;
  for (const std::vector<VertexId>& walk : index.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i)
      for (std::size_t j = i + 2; j < walk.size(); ++j)
        candidates.emplace_back(walk[i], walk[j]);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  return candidates;
}

std::vector<std::uint32_t> paths_containing(const PathIndex& index, Edge e) {
  std::vector<std::uint32_t> result;
  for (const auto& [p, pos_u] : index.members_of(e.first)) {
    for (const auto& [p2, pos_v] : index.members_of(e.second)) {
      if (p2 == p && pos_v > pos_u) {
        result.push_back(p);
        break;
      }
    }
  }
  return result;
}

}  // namespace

PotentialReport adversary_run(const Graph& g,
                              const std::vector<CriticalPath>& paths,
                              std::size_t budget, AdversaryStrategy strategy,
                              std::uint64_t seed,
                              const PotentialConfig& config) {
  std::vector<CriticalPath> tracked;
  if (config.restrict_to_sources) {
    std::vector<bool> in_set(g.num_vertices(), false);
    for (VertexId v : config.restrict_to_sources->vertices) in_set[v] = true;
    for (const CriticalPath& p : paths)
      if (in_set[path_endpoints(g, p).first]) tracked.push_back(p);
  } else {
    tracked = paths;
  }

  const std::vector<Edge> eprime = build_augment(g, config);
  const PathIndex index = PathIndex::build(g, tracked);
  PotentialEvaluator evaluator(g, eprime, index);

  PotentialReport report;
  report.initial = evaluator.phi();
  report.budget = budget;

  std::vector<Edge> added_set;  // sorted mirror for duplicate checks
  auto already_added = [&](Edge e) {
    return std::binary_search(added_set.begin(), added_set.end(), e);
  };
  auto commit = [&](Edge e, std::uint64_t drop) {
    evaluator.add_edge(e);
    added_set.insert(
        std::lower_bound(added_set.begin(), added_set.end(), e), e);
    report.added.push_back(e);
    report.drops.push_back(drop);
    ++report.drop_histogram[drop];
  };

  Rng rng(seed);
  if (strategy == AdversaryStrategy::kRandomClosure) {
    const VertexId n = g.num_vertices();
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue, reachable;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 200 * (budget + 1);
    while (report.added.size() < budget && attempts < max_attempts) {
      ++attempts;
      const VertexId u = static_cast<VertexId>(rng.below(n));
      const Graph* base = &g;
      bfs_overlay({&base, 1}, u, dist, queue);
      reachable.clear();
      for (VertexId v : queue)
        if (v != u) reachable.push_back(v);
      if (reachable.empty()) continue;
      std::sort(reachable.begin(), reachable.end());
      const Edge e{u, reachable[rng.below(reachable.size())]};
      if (already_added(e)) continue;
      commit(e, evaluator.drop_if_added(e).drop);
    }
  } else {
    const std::vector<Edge> candidates = candidate_windows(index);
    std::vector<bool> hit(index.walks.size(), false);
    while (report.added.size() < budget) {
      Edge best_edge{0, 0};
      std::uint64_t best_score = 0;
      bool found = false;
      for (const Edge& e : candidates) {
        if (already_added(e)) continue;
        std::uint64_t score = 0;
        if (strategy == AdversaryStrategy::kGreedyMaxDrop) {
          score = evaluator.drop_if_added(e).drop;
        } else {
          for (std::uint32_t p : paths_containing(index, e))
            if (!hit[p]) ++score;
        }
        if (score > best_score) {
          best_score = score;
          best_edge = e;
          found = true;
        }
      }
      if (!found) break;  // no candidate makes progress
      if (strategy == AdversaryStrategy::kHittingSet)
        for (std::uint32_t p : paths_containing(index, best_edge))
          hit[p] = true;
      commit(best_edge, evaluator.drop_if_added(best_edge).drop);
    }
  }

  report.budget_used = report.added.size();
  report.final_potential = evaluator.phi();
  report.max_pair_distance = evaluator.max_pair_distance();
  return report;
}

}  // namespace slab
