#include "slab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slab {

namespace {

bool is_power_of_two(std::uint32_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::uint32_t log2_exact(std::uint32_t x) {
  std::uint32_t bits = 0;
  while ((1u << bits) < x) ++bits;
  return bits;
}

void validate_params(const ConstructionParams& p) {
  if (!is_power_of_two(p.r))
    throw InputError("r must be a power of two, got " + std::to_string(p.r));
  if (p.d < 1) throw InputError("d must be >= 1");
}

constexpr std::uint64_t kMaxGeneratedVertices = 200'000'000;

Instance build_instance(std::uint32_t r, std::uint32_t d) {
  const std::vector<std::uint32_t> q = bit_reversal_permutation(r);
  const std::uint32_t layers = d * r + 1;

  std::vector<std::uint32_t> dims(d + 1);
  const std::uint64_t spatial_extent = 2ull * d * r;
  const std::uint64_t accum_extent = 2ull * d * r * r;
  if (accum_extent > std::numeric_limits<std::uint32_t>::max())
    throw ResourceError("grid extent overflows 32-bit coordinates");
  for (std::uint32_t k = 0; k < d; ++k)
    dims[k] = static_cast<std::uint32_t>(spatial_extent);
  dims[d] = static_cast<std::uint32_t>(accum_extent);

  std::uint64_t layer_size = 1;
  for (std::uint32_t e : dims) layer_size *= e;
  if (layer_size * layers > kMaxGeneratedVertices)
    throw ResourceError("instance too large to generate");

  // Row-major strides within a layer; last coordinate fastest.
  std::vector<std::uint64_t> stride(d + 1);
  stride[d] = 1;
  for (std::uint32_t k = d; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(layers - 1) * layer_size);
  std::vector<std::uint32_t> coords(d + 1, 0);
  for (std::uint32_t j = 0; j + 1 < layers; ++j) {
    const std::uint32_t k = j % d;       // bumped spatial coordinate
    const std::uint32_t w = q[j / d];    // accumulator increment
    const std::uint64_t base = static_cast<std::uint64_t>(j) * layer_size;
    std::fill(coords.begin(), coords.end(), 0);
    for (std::uint64_t offset = 0; offset < layer_size; ++offset) {
      const VertexId u = static_cast<VertexId>(base + offset);
      const VertexId zero_target = static_cast<VertexId>(u + layer_size);
      edges.emplace_back(u, zero_target);
      if (coords[k] + 1 < dims[k] && coords[d] + w < dims[d]) {
        edges.emplace_back(
            u, static_cast<VertexId>(zero_target + stride[k] + w));
      }
      // odometer increment, last coordinate fastest
      for (std::uint32_t c = d + 1; c-- > 0;) {
        if (++coords[c] < dims[c]) break;
        coords[c] = 0;
      }
    }
  }
  Graph graph(layers, dims, std::move(edges));

  // Starts range over [r]^d x [r^2]; thresholds over [1, r]^d. Both
  // enumerated lexicographically so regenerated instances are byte-stable.
  std::vector<CriticalPath> paths;
  std::uint64_t num_paths = 1;
  for (std::uint32_t k = 0; k < 2 * d + 2; ++k) num_paths *= r;
  paths.reserve(num_paths);
  std::vector<std::uint32_t> start(d + 1, 0);
  for (;;) {
    std::vector<std::uint32_t> thresholds(d, 1);
    for (;;) {
      paths.push_back(CriticalPath{start, thresholds});
      std::uint32_t c = d;
      while (c-- > 0) {
        if (++thresholds[c] <= r) break;
        thresholds[c] = 1;
      }
      if (c == std::numeric_limits<std::uint32_t>::max()) break;
    }
    std::uint32_t c = d + 1;
    while (c-- > 0) {
      const std::uint32_t extent = (c == d) ? r * r : r;
      if (++start[c] < extent) break;
      start[c] = 0;
    }
    if (c == std::numeric_limits<std::uint32_t>::max()) break;
  }
  return Instance{std::move(graph), std::move(paths)};
}

void validate_path(const CriticalPath& path, std::uint32_t r,
                   std::uint32_t d) {
  if (path.start.size() != d + 1 || path.thresholds.size() != d)
    throw InputError("critical path arity does not match the instance");
  for (std::uint32_t k = 0; k < d; ++k) {
    if (path.start[k] >= r)
      throw InputError("critical path start coordinate out of range");
    if (path.thresholds[k] < 1 || path.thresholds[k] > r)
      throw InputError("critical path threshold out of range");
  }
  if (path.start[d] >= r * r)
    throw InputError("critical path start accumulator out of range");
}

}  // namespace

std::vector<std::uint32_t> bit_reversal_permutation(std::uint32_t r) {
  if (!is_power_of_two(r))
    throw InputError("bit reversal needs a power-of-two size, got " +
                     std::to_string(r));
  const std::uint32_t bits = log2_exact(r);
  std::vector<std::uint32_t> q(r);
  for (std::uint32_t i = 0; i < r; ++i) {
    std::uint32_t rev = 0;
    for (std::uint32_t b = 0; b < bits; ++b)
      rev |= ((i >> b) & 1u) << (bits - 1 - b);
    q[i] = rev;
  }
  return q;
}

Instance build_base(const ConstructionParams& params) {
  validate_params(params);
  if (params.d != 1)
    throw InputError("the base construction is one-dimensional (d = 1)");
  return build_instance(params.r, 1);
}

Instance build_gd(const ConstructionParams& params) {
  validate_params(params);
  return build_instance(params.r, params.d);
}

InstanceParams derive_params(const Graph& g) {
  if (!g.is_layered())
    throw InputError("graph is not a generated layered instance");
  const std::vector<std::uint32_t>& dims = g.grid_dims();
  if (dims.size() < 2)
    throw InputError("graph is not a generated layered instance");
  const std::uint32_t d = static_cast<std::uint32_t>(dims.size()) - 1;
  for (std::uint32_t k = 1; k < d; ++k)
    if (dims[k] != dims[0])
      throw InputError("graph is not a generated layered instance");
  if (dims[0] % (2 * d) != 0)
    throw InputError("graph is not a generated layered instance");
  const std::uint32_t r = dims[0] / (2 * d);
  if (!is_power_of_two(r) || dims[d] != 2ull * d * r * r ||
      g.num_layers() != d * r + 1) {
    throw InputError("graph is not a generated layered instance");
  }
  return InstanceParams{r, d};
}

std::vector<VertexId> critical_walk(const Graph& g, const CriticalPath& path) {
  const InstanceParams p = derive_params(g);
  validate_path(path, p.r, p.d);
  const std::vector<std::uint32_t> q = bit_reversal_permutation(p.r);
  std::vector<std::uint32_t> coords = path.start;
  std::vector<VertexId> walk(g.num_layers());
  walk[0] = g.vertex_at(0, coords);
  for (std::uint32_t j = 0; j + 1 < g.num_layers(); ++j) {
    const std::uint32_t k = j % p.d;
    if (q[j / p.d] < path.thresholds[k]) {
      coords[k] += 1;
      coords[p.d] += q[j / p.d];
    }
    walk[j + 1] = g.vertex_at(j + 1, coords);
  }
  return walk;
}

std::pair<VertexId, VertexId> path_endpoints(const Graph& g,
                                             const CriticalPath& path) {
  const InstanceParams p = derive_params(g);
  validate_path(path, p.r, p.d);
  std::vector<std::uint32_t> end = path.start;
  for (std::uint32_t k = 0; k < p.d; ++k) {
    const std::uint32_t s = path.thresholds[k];
    end[k] += s;
    end[p.d] += s * (s - 1) / 2;
  }
  return {g.vertex_at(0, path.start), g.vertex_at(g.num_layers() - 1, end)};
}

Graph path_subsample(const Graph& g, std::int64_t k) {
  if (!g.is_layered()) throw InputError("path subsampling needs a layered graph");
  if (k <= 0) throw InputError("subsampling stride must be positive");
  const std::uint32_t layers = g.num_layers();
  const std::uint64_t layer_size = g.layer_size();

  std::vector<std::uint32_t> kept;
  for (std::uint64_t a = 0; a < layers; a += static_cast<std::uint64_t>(k))
    kept.push_back(static_cast<std::uint32_t>(a));
  if (kept.back() != layers - 1) kept.push_back(layers - 1);

  std::vector<Edge> edges;
  std::vector<VertexId> frontier, next;
  for (std::size_t ki = 0; ki + 1 < kept.size(); ++ki) {
    const std::uint32_t a = kept[ki], b = kept[ki + 1];
    for (std::uint64_t offset = 0; offset < layer_size; ++offset) {
      frontier.assign(1, static_cast<VertexId>(a * layer_size + offset));
      for (std::uint32_t layer = a; layer < b; ++layer) {
        next.clear();
        for (VertexId u : frontier)
          for (VertexId v : g.out(u)) next.push_back(v);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier.swap(next);
      }
      const VertexId new_u =
          static_cast<VertexId>(ki * layer_size + offset);
      for (VertexId v : frontier) {
        edges.emplace_back(new_u, static_cast<VertexId>(
                                      (ki + 1) * layer_size + v % layer_size));
      }
    }
  }
  return Graph(static_cast<std::uint32_t>(kept.size()), g.grid_dims(),
               std::move(edges));
}

SourceSet sample_source_set(const Graph& g, std::uint64_t seed,
                            std::optional<double> probability_override) {
  const InstanceParams p = derive_params(g);
  double probability;
  if (probability_override) {
    probability = *probability_override;
  } else {
    const double log_n = std::log2(static_cast<double>(g.num_vertices()));
    probability = log_n * log_n;
    for (std::uint32_t k = 1; k < p.d; ++k) probability /= p.r;
  }
  SourceSet sources;
  const std::uint64_t layer_size = g.layer_size();
  if (probability >= 1.0) {
    sources.vertices.resize(layer_size);
    for (std::uint64_t v = 0; v < layer_size; ++v)
      sources.vertices[v] = static_cast<VertexId>(v);
    return sources;
  }
  Rng rng(seed);
  for (std::uint64_t v = 0; v < layer_size; ++v)
    if (rng.bernoulli(probability))
      sources.vertices.push_back(static_cast<VertexId>(v));
  return sources;
}

}  // namespace slab
