#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slab/construct.hpp"
#include "slab/graph.hpp"

namespace slab {

// Plain-text, versioned artifact formats. All writers emit '\n' line endings
// and end with a newline, so regenerated artifacts diff cleanly against
// committed golden files.
//
//   graph      SLAB v1 layered=<0|1> layers=<l> dims=<d1,d2,...> n=<n> m=<m>
//              followed by one "u v" line per edge (CSR order).
//              General digraphs use layered=0 layers=0 dims=.
//   paths      SLAB-P v1 count=<k> d=<d>
//              one line per path: x1 .. xd y s1 .. sd
//   shortcuts  SLAB-H v1 k=<k>        followed by "u v" lines
//   sources    SLAB-S v1 count=<k>    followed by one id per line

void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);

void write_paths(std::ostream& os, const std::vector<CriticalPath>& paths,
                 std::uint32_t d);
std::vector<CriticalPath> read_paths(std::istream& is,
                                     std::uint32_t* d_out = nullptr);

void write_shortcuts(std::ostream& os, const ShortcutSet& h);
ShortcutSet read_shortcuts(std::istream& is);

void write_sources(std::ostream& os, const SourceSet& s);
SourceSet read_sources(std::istream& is);

// File wrappers; errors mention the path.
void write_graph_file(const std::string& path, const Graph& g);
Graph read_graph_file(const std::string& path);
void write_paths_file(const std::string& path,
                      const std::vector<CriticalPath>& paths, std::uint32_t d);
std::vector<CriticalPath> read_paths_file(const std::string& path,
                                          std::uint32_t* d_out = nullptr);
void write_shortcuts_file(const std::string& path, const ShortcutSet& h);
ShortcutSet read_shortcuts_file(const std::string& path);
void write_sources_file(const std::string& path, const SourceSet& s);
SourceSet read_sources_file(const std::string& path);

}  // namespace slab
