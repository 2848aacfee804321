#include "slab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace slab {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    fail(line, "expected an unsigned integer, got '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

// "key=value" with a fixed expected key.
std::string_view keyed(std::string_view token, std::string_view key,
                       std::size_t line) {
  if (token.size() < key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=') {
    fail(line, "expected '" + std::string(key) + "=...', got '" +
                   std::string(token) + "'");
  }
  return token.substr(key.size() + 1);
}

std::string getline_checked(std::istream& is, std::size_t line) {
  std::string s;
  if (!std::getline(is, s)) fail(line, "unexpected end of file");
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::vector<Edge> read_edge_lines(std::istream& is, std::uint64_t count,
                                  std::size_t first_line) {
  std::vector<Edge> edges;
  edges.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t line = first_line + i;
    const std::string text = getline_checked(is, line);
    const std::vector<std::string_view> tokens = split(text);
    if (tokens.size() != 2) fail(line, "expected 'u v'");
    edges.emplace_back(static_cast<VertexId>(parse_u64(tokens[0], line)),
                       static_cast<VertexId>(parse_u64(tokens[1], line)));
  }
  return edges;
}

}  // namespace

void write_graph(std::ostream& os, const Graph& g) {
  os << "SLAB v1 layered=" << (g.is_layered() ? 1 : 0)
     << " layers=" << (g.is_layered() ? g.num_layers() : 0) << " dims=";
  const std::vector<std::uint32_t>& dims = g.grid_dims();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) os << ',';
    os << dims[i];
  }
  os << " n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  for (VertexId u = 0; u < g.num_vertices(); ++u)
    for (VertexId v : g.out(u)) os << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& is) {
  const std::string header = getline_checked(is, 1);
  const std::vector<std::string_view> tokens = split(header);
  if (tokens.size() != 7 || tokens[0] != "SLAB" || tokens[1] != "v1")
    fail(1, "expected 'SLAB v1 layered=... layers=... dims=... n=... m=...'");
  const std::uint64_t layered = parse_u64(keyed(tokens[2], "layered", 1), 1);
  const std::uint64_t layers = parse_u64(keyed(tokens[3], "layers", 1), 1);
  const std::string_view dims_text = keyed(tokens[4], "dims", 1);
  const std::uint64_t n = parse_u64(keyed(tokens[5], "n", 1), 1);
  const std::uint64_t m = parse_u64(keyed(tokens[6], "m", 1), 1);

  std::vector<std::uint32_t> dims;
  if (!dims_text.empty()) {
    std::size_t i = 0;
    while (i <= dims_text.size()) {
      std::size_t j = dims_text.find(',', i);
      if (j == std::string_view::npos) j = dims_text.size();
      dims.push_back(
          static_cast<std::uint32_t>(parse_u64(dims_text.substr(i, j - i), 1)));
      i = j + 1;
      if (j == dims_text.size()) break;
    }
  }

  std::vector<Edge> edges = read_edge_lines(is, m, 2);
  if (layered != 0) {
    Graph g(static_cast<std::uint32_t>(layers), dims, std::move(edges));
    if (g.num_vertices() != n) fail(1, "n does not match layers and dims");
    return g;
  }
  return Graph(static_cast<VertexId>(n), std::move(edges));
}

void write_paths(std::ostream& os, const std::vector<CriticalPath>& paths,
                 std::uint32_t d) {
  os << "SLAB-P v1 count=" << paths.size() << " d=" << d << '\n';
  for (const CriticalPath& p : paths) {
    for (std::size_t i = 0; i < p.start.size(); ++i) {
      if (i) os << ' ';
      os << p.start[i];
    }
    for (std::uint32_t s : p.thresholds) os << ' ' << s;
    os << '\n';
  }
}

std::vector<CriticalPath> read_paths(std::istream& is, std::uint32_t* d_out) {
  const std::string header = getline_checked(is, 1);
  const std::vector<std::string_view> tokens = split(header);
  if (tokens.size() != 4 || tokens[0] != "SLAB-P" || tokens[1] != "v1")
    fail(1, "expected 'SLAB-P v1 count=... d=...'");
  const std::uint64_t count = parse_u64(keyed(tokens[2], "count", 1), 1);
  const std::uint32_t d =
      static_cast<std::uint32_t>(parse_u64(keyed(tokens[3], "d", 1), 1));
  if (d < 1) fail(1, "d must be >= 1");
  if (d_out != nullptr) *d_out = d;

  std::vector<CriticalPath> paths;
  paths.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t line = 2 + i;
    const std::string text = getline_checked(is, line);
    const std::vector<std::string_view> fields = split(text);
    if (fields.size() != 2ull * d + 1)
      fail(line, "expected " + std::to_string(2 * d + 1) + " fields");
    CriticalPath p;
    p.start.resize(d + 1);
    p.thresholds.resize(d);
    for (std::uint32_t k = 0; k <= d; ++k)
      p.start[k] = static_cast<std::uint32_t>(parse_u64(fields[k], line));
    for (std::uint32_t k = 0; k < d; ++k)
      p.thresholds[k] =
          static_cast<std::uint32_t>(parse_u64(fields[d + 1 + k], line));
    paths.push_back(std::move(p));
  }
  return paths;
}

void write_shortcuts(std::ostream& os, const ShortcutSet& h) {
  os << "SLAB-H v1 k=" << h.size() << '\n';
  for (const Edge& e : h.edges()) os << e.first << ' ' << e.second << '\n';
}

ShortcutSet read_shortcuts(std::istream& is) {
  const std::string header = getline_checked(is, 1);
  const std::vector<std::string_view> tokens = split(header);
  if (tokens.size() != 3 || tokens[0] != "SLAB-H" || tokens[1] != "v1")
    fail(1, "expected 'SLAB-H v1 k=...'");
  const std::uint64_t count = parse_u64(keyed(tokens[2], "k", 1), 1);
  ShortcutSet h;
  for (const Edge& e : read_edge_lines(is, count, 2)) h.add(e);
  return h;
}

void write_sources(std::ostream& os, const SourceSet& s) {
  os << "SLAB-S v1 count=" << s.vertices.size() << '\n';
  for (VertexId v : s.vertices) os << v << '\n';
}

SourceSet read_sources(std::istream& is) {
  const std::string header = getline_checked(is, 1);
  const std::vector<std::string_view> tokens = split(header);
  if (tokens.size() != 3 || tokens[0] != "SLAB-S" || tokens[1] != "v1")
    fail(1, "expected 'SLAB-S v1 count=...'");
  const std::uint64_t count = parse_u64(keyed(tokens[2], "count", 1), 1);
  SourceSet s;
  s.vertices.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t line = 2 + i;
    const std::string text = getline_checked(is, line);
    const std::vector<std::string_view> fields = split(text);
    if (fields.size() != 1) fail(line, "expected one vertex id");
    s.vertices.push_back(static_cast<VertexId>(parse_u64(fields[0], line)));
  }
  return s;
}

namespace {

template <typename WriteFn>
void write_file(const std::string& path, WriteFn&& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open '" + path + "' for writing");
  fn(os);
  os.flush();
  if (!os) throw InputError("failed while writing '" + path + "'");
}

template <typename ReadFn>
auto read_file(const std::string& path, ReadFn&& fn) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open '" + path + "'");
  try {
    return fn(is);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

void write_graph_file(const std::string& path, const Graph& g) {
  write_file(path, [&](std::ostream& os) { write_graph(os, g); });
}

Graph read_graph_file(const std::string& path) {
  return read_file(path, [](std::istream& is) { return read_graph(is); });
}

void write_paths_file(const std::string& path,
                      const std::vector<CriticalPath>& paths,
                      std::uint32_t d) {
  write_file(path, [&](std::ostream& os) { write_paths(os, paths, d); });
}

std::vector<CriticalPath> read_paths_file(const std::string& path,
                                          std::uint32_t* d_out) {
  return read_file(path,
                   [&](std::istream& is) { return read_paths(is, d_out); });
}

void write_shortcuts_file(const std::string& path, const ShortcutSet& h) {
  write_file(path, [&](std::ostream& os) { write_shortcuts(os, h); });
}

ShortcutSet read_shortcuts_file(const std::string& path) {
  return read_file(path, [](std::istream& is) { return read_shortcuts(is); });
}

void write_sources_file(const std::string& path, const SourceSet& s) {
  write_file(path, [&](std::ostream& os) { write_sources(os, s); });
}

SourceSet read_sources_file(const std::string& path) {
  return read_file(path, [](std::istream& is) { return read_sources(is); });
}

}  // namespace slab
