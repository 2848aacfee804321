#include <doctest.h>

#include <sstream>

#include "slab/construct.hpp"
#include "slab/io.hpp"
#include "test_util.hpp"

using namespace slab;
using namespace slab::testutil;

namespace {

std::string graph_bytes(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

}  // namespace

TEST_CASE("graph files: byte-stable round trip") {
  const Instance inst = build_base({.r = 2, .d = 1});
  const std::string bytes = graph_bytes(inst.graph);
  std::istringstream is(bytes);
  const Graph back = read_graph(is);
  CHECK(graph_bytes(back) == bytes);
  CHECK(back.num_layers() == 3);
  CHECK(back.grid_dims() == inst.graph.grid_dims());
  CHECK(back.edges() == inst.graph.edges());

  // zero-step edges: 2*32 vertices in layers 0..1; nonzero: 3*8 + 3*7
  CHECK(bytes.substr(0, bytes.find('\n')) ==
        "SLAB v1 layered=1 layers=3 dims=4,8 n=96 m=109");
}

TEST_CASE("graph files: general digraphs") {
  const Graph g = random_dag(12, 0.3, 4);
  const std::string bytes = graph_bytes(g);
  CHECK(bytes.substr(0, bytes.find(' ', 8) + 1).starts_with("SLAB v1 "));
  CHECK(bytes.find("layered=0 layers=0 dims= n=12") != std::string::npos);
  std::istringstream is(bytes);
  const Graph back = read_graph(is);
  CHECK_FALSE(back.is_layered());
  CHECK(back.edges() == g.edges());
}

TEST_CASE("path files: round trip") {
  const Instance inst = build_gd({.r = 2, .d = 2});
  std::ostringstream os;
  write_paths(os, inst.paths, 2);
  std::istringstream is(os.str());
  std::uint32_t d = 0;
  const std::vector<CriticalPath> back = read_paths(is, &d);
  CHECK(d == 2);
  REQUIRE(back.size() == inst.paths.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].start == inst.paths[i].start);
    CHECK(back[i].thresholds == inst.paths[i].thresholds);
  }
  std::ostringstream os2;
  write_paths(os2, back, d);
  CHECK(os2.str() == os.str());
}

TEST_CASE("shortcut and source files: round trip") {
  ShortcutSet h;
  h.add({0, 5});
  h.add({2, 9});
  std::ostringstream os;
  write_shortcuts(os, h);
  CHECK(os.str() == "SLAB-H v1 k=2\n0 5\n2 9\n");
  std::istringstream is(os.str());
  const ShortcutSet back = read_shortcuts(is);
  CHECK(std::vector<Edge>(back.edges().begin(), back.edges().end()) ==
        std::vector<Edge>{{0, 5}, {2, 9}});

  SourceSet s{{1, 4, 7}};
  std::ostringstream os2;
  write_sources(os2, s);
  CHECK(os2.str() == "SLAB-S v1 count=3\n1\n4\n7\n");
  std::istringstream is2(os2.str());
  CHECK(read_sources(is2).vertices == s.vertices);
}

TEST_CASE("malformed inputs are rejected with line diagnostics") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
  };
  CHECK_THROWS_AS(parse("BOGUS v1\n"), InputError);
  CHECK_THROWS_AS(parse("SLAB v1 layered=1 layers=3 dims=4,8 n=96\n"),
                  InputError);
  CHECK_THROWS_WITH_AS(
      parse("SLAB v1 layered=0 layers=0 dims= n=4 m=2\n0 1\n"),
      "line 3: unexpected end of file", InputError);
  CHECK_THROWS_WITH_AS(
      parse("SLAB v1 layered=0 layers=0 dims= n=4 m=1\n0 x\n"),
      "line 2: expected an unsigned integer, got 'x'", InputError);
  CHECK_THROWS_AS(parse("SLAB v1 layered=0 layers=0 dims= n=2 m=1\n0 7\n"),
                  InputError);  // endpoint out of range

  std::istringstream bad_paths("SLAB-P v1 count=1 d=1\n1 2\n");
  CHECK_THROWS_AS(read_paths(bad_paths), InputError);
}
