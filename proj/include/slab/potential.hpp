#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "slab/construct.hpp"
#include "slab/graph.hpp"

namespace slab {

// Short-range augmentation. E' contains every ordered pair at distance <= c,
// plus (when half_layer_rule is set, layered graphs only) every reachable
// pair whose target lies in the first half of the layers. restrict_to_sources
// limits the potential to critical paths starting inside the set.
struct PotentialConfig {
  std::uint32_t c = 0;
  bool half_layer_rule = false;
  std::optional<SourceSet> restrict_to_sources;
  std::size_t max_augment_edges = 50'000'000;
};

std::vector<Edge> build_augment(const Graph& g, const PotentialConfig& config);
std::vector<Edge> build_augment_serial(const Graph& g,
                                       const PotentialConfig& config);

// Walks of a path set plus a per-vertex membership index, shared by the
// potential machinery. Walk membership lists are short: within one threshold
// group walks are vertex-disjoint, so a vertex lies on at most one walk per
// group.
struct PathIndex {
  std::vector<std::vector<VertexId>> walks;
  std::vector<VertexId> start_of, end_of;
  std::vector<std::size_t> member_off;                     // per vertex
  std::vector<std::pair<std::uint32_t, std::uint32_t>> member;  // (path, pos)

  static PathIndex build(const Graph& g,
                         std::span<const CriticalPath> paths);
  std::span<const std::pair<std::uint32_t, std::uint32_t>> members_of(
      VertexId v) const {
    return {member.data() + member_off[v], member_off[v + 1] - member_off[v]};
  }
};

// Sum over tracked paths of the endpoint distance in G ∪ E' ∪ H.
std::uint64_t potential(const Graph& g, std::span<const Edge> eprime,
                        const ShortcutSet& h,
                        std::span<const CriticalPath> paths);
std::uint64_t potential_serial(const Graph& g, std::span<const Edge> eprime,
                               const ShortcutSet& h,
                               std::span<const CriticalPath> paths);

struct DropResult {
  std::uint64_t drop = 0;      // potential decrease caused by the edge
  std::uint64_t affected = 0;  // paths whose endpoint distance changed
};

// Incremental potential bookkeeping for a fixed (graph, E', path set).
//
// Cached state: endpoint distances of every tracked path, forward distances
// from each distinct start and backward distances to each distinct endpoint,
// all in B = G ∪ E' ∪ H. Every edge of B advances the layer index, so a
// shortest path can use one extra edge (u, v) at most once and
//   dist_{B+e}(s, t) = min(dist_B(s, t), dist_B(s, u) + 1 + dist_B(v, t)),
// which makes single-edge drop queries exact without re-running BFS.
class PotentialEvaluator {
 public:
  PotentialEvaluator(const Graph& g, std::vector<Edge> eprime,
                     const PathIndex& index);

  std::uint64_t phi() const { return phi_; }
  const Graph& graph() const { return *graph_; }
  std::size_t num_paths() const { return index_->walks.size(); }
  std::uint32_t distance_of(std::size_t path) const { return path_dist_[path]; }
  std::uint32_t max_pair_distance() const;
  const ShortcutSet& shortcuts() const { return shortcuts_; }

  // Exact drop and affected-path count if e were added; no state change.
  // Assumes e is a transitive-closure edge.
  DropResult drop_if_added(Edge e) const;

  // Full-recompute cross-check: evaluates the potential from scratch with and
  // without e. Used as the oracle for the incremental path.
  DropResult drop_if_added_full_recompute(Edge e) const;

  void add_edge(Edge e);

 private:
  void refresh();

  const Graph* graph_;
  const PathIndex* index_;
  std::vector<Edge> eprime_edges_;
  Graph graph_rev_;
  Graph eprime_, eprime_rev_;
  ShortcutSet shortcuts_;
  Graph shortcut_overlay_, shortcut_rev_;

  std::vector<VertexId> starts_, ends_;  // distinct, ascending
  std::unordered_map<VertexId, std::uint32_t> start_slot_, end_slot_;
  std::vector<std::vector<std::uint32_t>> fwd_dist_;  // per start slot
  std::vector<std::vector<std::uint32_t>> bwd_dist_;  // per end slot
  std::vector<std::uint32_t> path_dist_;
  std::uint64_t phi_ = 0;
};

// Spec-level wrapper: validates that new_edge lies in the transitive closure
// (InputError otherwise), then answers from the evaluator's cached state.
DropResult drop_of_edge(const PotentialEvaluator& evaluator, Edge new_edge);

// One-shot form; builds a throwaway evaluator. Prefer the evaluator overload
// when auditing many edges against the same configuration.
DropResult drop_of_edge(const Graph& g, std::span<const Edge> eprime,
                        std::span<const CriticalPath> paths,
                        const ShortcutSet& h, Edge new_edge);

enum class AdversaryStrategy { kRandomClosure, kGreedyMaxDrop, kHittingSet };

AdversaryStrategy parse_strategy(const std::string& name);  // InputError
std::string strategy_name(AdversaryStrategy strategy);

// Result of a budgeted shortcut-insertion experiment.
struct PotentialReport {
  std::uint64_t initial = 0;
  std::uint64_t final_potential = 0;
  std::size_t budget = 0;
  std::size_t budget_used = 0;
  std::uint32_t max_pair_distance = 0;
  std::vector<std::uint64_t> drops;              // per added edge, in order
  std::map<std::uint64_t, std::uint64_t> drop_histogram;
  std::vector<Edge> added;
};

// Adds up to `budget` shortcuts according to the strategy, recording the
// exact drop of every insertion. Deterministic for a fixed seed. Greedy and
// hitting-set stop early once no candidate makes progress.
PotentialReport adversary_run(const Graph& g,
                              const std::vector<CriticalPath>& paths,
                              std::size_t budget, AdversaryStrategy strategy,
                              std::uint64_t seed,
                              const PotentialConfig& config);

}  // namespace slab
