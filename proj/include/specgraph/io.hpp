#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

// Edge-list text format: one edge per line, "u v [w]" whitespace separated,
// '#' starts a comment, ids 0-based, weight defaults to 1. A comment line of
// the form "# vertices N" fixes the vertex count (otherwise max id + 1).
struct EdgeList {
  Graph graph;
  // External names when string ids were mapped; empty otherwise.
  std::vector<std::string> names;
};

// With map_string_ids, arbitrary tokens are accepted as vertex names and
// numbered by first appearance.
EdgeList read_edge_list(std::istream& in, bool map_string_ids = false);
EdgeList read_edge_list_file(const std::string& path, bool map_string_ids = false);

// Writes "# vertices N" then canonical edges (u < v, sorted), full precision.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

// "vertex,value" CSV with header. Missing vertices are zero.
Vector read_vertex_csv(std::istream& in, std::size_t n);
Vector read_vertex_csv_file(const std::string& path, std::size_t n);

// "vertex,class" CSV with header; returns (vertex, class) pairs.
std::vector<std::pair<Vertex, int>> read_label_csv(std::istream& in);
std::vector<std::pair<Vertex, int>> read_label_csv_file(const std::string& path);

// Column-oriented CSV writer: header names, then rows.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns);

}  // namespace specgraph
