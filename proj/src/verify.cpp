#include "slab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

namespace slab {

namespace {

std::string describe_path(const CriticalPath& p) {
  std::ostringstream os;
  os << "start=(";
  for (std::size_t i = 0; i < p.start.size(); ++i)
    os << (i ? "," : "") << p.start[i];
  os << ") s=(";
  for (std::size_t i = 0; i < p.thresholds.size(); ++i)
    os << (i ? "," : "") << p.thresholds[i];
  os << ")";
  return os.str();
}

std::vector<std::vector<VertexId>> all_walks(
    const Graph& g, const std::vector<CriticalPath>& paths) {
  std::vector<std::vector<VertexId>> walks(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    walks[i] = critical_walk(g, paths[i]);
  return walks;
}

}  // namespace

VerificationReport verify_unique_paths(
    const Graph& g, const std::vector<CriticalPath>& paths) {
  VerificationReport report;
  report.lemma = "unique";
  report.checked = paths.size();

  // One counting pass per distinct start vertex covers every path sharing it.
  std::vector<std::pair<VertexId, std::size_t>> by_start(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    by_start[i] = {path_endpoints(g, paths[i]).first, i};
  std::sort(by_start.begin(), by_start.end());

  std::size_t i = 0;
  while (i < by_start.size()) {
    const VertexId start = by_start[i].first;
    const std::vector<PathCount> counts = count_paths_from(g, start);
    for (; i < by_start.size() && by_start[i].first == start; ++i) {
      const std::size_t path_idx = by_start[i].second;
      const VertexId target = path_endpoints(g, paths[path_idx]).second;
      const PathCount& c = counts[target];
      report.max_ratio =
          std::max(report.max_ratio, static_cast<double>(c));
      if (c != 1) {
        report.violations.push_back(
            "path " + std::to_string(path_idx) + " " +
            describe_path(paths[path_idx]) + " has " + c.str() +
            " endpoint-to-endpoint paths");
      }
    }
  }
  return report;
}

VerificationReport verify_vertex_disjoint_walks(
    const std::vector<WalkEntry>& entries) {
  VerificationReport report;
  report.lemma = "disjoint";
  report.checked = entries.size();
  report.max_ratio = entries.empty() ? 0.0 : 1.0;

  std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < entries.size(); ++i)
    groups[entries[i].key].push_back(i);

  std::unordered_map<VertexId, std::size_t> seen;
  for (const auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    const std::size_t layers = entries[members.front()].walk.size();
    for (std::size_t layer = 0; layer < layers; ++layer) {
      seen.clear();
      std::unordered_map<VertexId, std::size_t> multiplicity;
      for (std::size_t m : members) {
        const VertexId v = entries[m].walk[layer];
        const std::size_t count = ++multiplicity[v];
        report.max_ratio =
            std::max(report.max_ratio, static_cast<double>(count));
        auto [it, inserted] = seen.emplace(v, m);
        if (!inserted) {
          report.violations.push_back(
              "walks " + std::to_string(it->second) + " and " +
              std::to_string(m) + " share vertex " + std::to_string(v) +
              " at layer " + std::to_string(layer));
        }
      }
    }
  }
  return report;
}

VerificationReport verify_vertex_disjoint(
    const Graph& g, const std::vector<CriticalPath>& paths) {
  // Collapse exact duplicates: identical (start, thresholds) descriptors
  // denote the same path and are excluded from the pairwise check.
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
      dedup(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    dedup[i] = {paths[i].start, paths[i].thresholds};
  std::sort(dedup.begin(), dedup.end());
  dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());

  std::vector<WalkEntry> entries(dedup.size());
  for (std::size_t i = 0; i < dedup.size(); ++i) {
    const CriticalPath p{dedup[i].first, dedup[i].second};
    entries[i] = WalkEntry{p.thresholds, critical_walk(g, p)};
  }
  return verify_vertex_disjoint_walks(entries);
}

VerificationReport verify_overlap_bound_walks(
    const std::vector<std::vector<VertexId>>& walks, std::uint32_t r,
    std::uint32_t d) {
  VerificationReport report;
  report.lemma = "overlap";
  if (walks.empty()) return report;
  const std::size_t layers = walks.front().size();

  // Rolling polynomial fingerprints give O(1) window hashes; every
  // fingerprint bucket is re-partitioned by exact sequence comparison.
  constexpr std::uint64_t kMul = 0x9e3779b97f4a7c15ull;
  std::vector<std::uint64_t> pow(layers + 1);
  pow[0] = 1;
  for (std::size_t i = 1; i <= layers; ++i) pow[i] = pow[i - 1] * kMul;
  std::vector<std::vector<std::uint64_t>> prefix(walks.size());
  for (std::size_t w = 0; w < walks.size(); ++w) {
    prefix[w].resize(layers + 1);
    prefix[w][0] = 0;
    for (std::size_t i = 0; i < layers; ++i)
      prefix[w][i + 1] = prefix[w][i] * kMul + walks[w][i] + 1;
  }
  auto window_hash = [&](std::size_t w, std::size_t a, std::size_t g) {
    return prefix[w][a + g + 1] - prefix[w][a] * pow[g + 1];
  };
  auto window_equal = [&](std::size_t w1, std::size_t w2, std::size_t a,
                          std::size_t g) {
    return std::equal(walks[w1].begin() + a, walks[w1].begin() + a + g + 1,
                      walks[w2].begin() + a);
  };

  const double bound_d1 = 8.0 * r;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  std::vector<std::vector<std::uint32_t>> groups;
  for (std::size_t g = 1; g < layers; ++g) {
    for (std::size_t a = 0; a + g < layers; ++a) {
      buckets.clear();
      for (std::size_t w = 0; w < walks.size(); ++w)
        buckets[window_hash(w, a, g)].push_back(static_cast<std::uint32_t>(w));
      for (const auto& [hash, members] : buckets) {
        (void)hash;
        groups.clear();
        for (std::uint32_t w : members) {
          bool placed = false;
          for (std::vector<std::uint32_t>& grp : groups) {
            if (window_equal(grp.front(), w, a, g)) {
              grp.push_back(w);
              placed = true;
              break;
            }
          }
          if (!placed) groups.push_back({w});
        }
        for (const std::vector<std::uint32_t>& grp : groups) {
          report.checked += grp.size();
          const double count = static_cast<double>(grp.size());
          if (d == 1) {
            report.max_ratio =
                std::max(report.max_ratio, count * g / bound_d1);
            if (count * g > bound_d1) {
              report.violations.push_back(
                  "window a=" + std::to_string(a) + " g=" + std::to_string(g) +
                  " of walk " + std::to_string(grp.front()) + " lies on " +
                  std::to_string(grp.size()) + " walks > bound " +
                  std::to_string(bound_d1 / g));
            }
          } else {
            report.max_ratio = std::max(
                report.max_ratio,
                count * std::pow(static_cast<double>(g) / r,
                                 static_cast<double>(d)));
          }
        }
      }
    }
  }
  return report;
}

VerificationReport verify_overlap_bound(const Graph& g,
                                        const std::vector<CriticalPath>& paths,
                                        const OverlapOptions& options) {
  const InstanceParams p = derive_params(g);
  const std::uint32_t cap = p.d == 1 ? options.max_r_d1 : options.max_r_hd;
  if (p.r > cap) {
    throw ResourceError("overlap verification capped at r=" +
                        std::to_string(cap) + " for d=" + std::to_string(p.d));
  }
  return verify_overlap_bound_walks(all_walks(g, paths), p.r, p.d);
}

}  // namespace slab
