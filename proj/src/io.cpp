#include "specgraph/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool parse_uint(const std::string& tok, std::uint64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_double(const std::string& tok, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(tok, &pos);
    return pos == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

EdgeList read_edge_list(std::istream& in, bool map_string_ids) {
  std::vector<Edge> edges;
  std::unordered_map<std::string, Vertex> ids;
  std::vector<std::string> names;
  std::size_t declared_n = 0;
  std::size_t max_id_plus_one = 0;
  std::string line;
  std::size_t lineno = 0;

  auto malformed = [&](const std::string& why) {
    return ValidationError("edge list line " + std::to_string(lineno) + ": " + why);
  };
  auto lookup = [&](const std::string& tok) -> Vertex {
    if (map_string_ids) {
      auto [it, inserted] = ids.emplace(tok, static_cast<Vertex>(names.size()));
      if (inserted) names.push_back(tok);
      return it->second;
    }
    std::uint64_t v = 0;
    if (!parse_uint(tok, v) || v > std::numeric_limits<Vertex>::max() - 1) {
      throw malformed("bad vertex id '" + tok + "'");
    }
    return static_cast<Vertex>(v);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream cs(line.substr(hash + 1));
      std::string key;
      std::uint64_t n = 0;
      if (cs >> key && key == "vertices" && cs >> n) declared_n = n;
    }
    std::istringstream ls(strip_comment(line));
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3) throw malformed("expected 'u v [w]'");
    Edge e;
    e.u = lookup(toks[0]);
    e.v = lookup(toks[1]);
    if (toks.size() == 3 && !parse_double(toks[2], e.w)) throw malformed("bad weight '" + toks[2] + "'");
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(e.u, e.v) + 1);
    edges.push_back(e);
  }
  std::size_t n = map_string_ids ? names.size() : std::max(declared_n, max_id_plus_one);
  if (n == 0) throw ValidationError("edge list declares no vertices");
  return {Graph(n, std::move(edges)), std::move(names)};
}

EdgeList read_edge_list_file(const std::string& path, bool map_string_ids) {
  auto in = open_in(path);
  return read_edge_list(in, map_string_ids);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# vertices " << g.num_vertices() << "\n";
  out << std::setprecision(17);
  for (const Edge& e : g.canonical_edges()) out << e.u << " " << e.v << " " << e.w << "\n";
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

Vector read_vertex_csv(std::istream& in, std::size_t n) {
  Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || strip_comment(line).find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    std::uint64_t v = 0;
    double val = 0.0;
    if (cells.size() < 2 || !parse_uint(cells[0], v) || !parse_double(cells[1], val) || v >= n) {
      throw ValidationError("vector csv line " + std::to_string(lineno) + ": expected 'vertex,value'");
    }
    x[static_cast<Eigen::Index>(v)] = val;
  }
  return x;
}

Vector read_vertex_csv_file(const std::string& path, std::size_t n) {
  auto in = open_in(path);
  return read_vertex_csv(in, n);
}

std::vector<std::pair<Vertex, int>> read_label_csv(std::istream& in) {
  std::vector<std::pair<Vertex, int>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || strip_comment(line).find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    std::uint64_t v = 0, c = 0;
    if (cells.size() < 2 || !parse_uint(cells[0], v) || !parse_uint(cells[1], c)) {
      throw ValidationError("label csv line " + std::to_string(lineno) + ": expected 'vertex,class'");
    }
    out.emplace_back(static_cast<Vertex>(v), static_cast<int>(c));
  }
  return out;
}

std::vector<std::pair<Vertex, int>> read_label_csv_file(const std::string& path) {
  auto in = open_in(path);
  return read_label_csv(in);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n" << std::setprecision(17);
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].at(r);
    out << "\n";
  }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns) {
  auto out = open_out(path);
  write_csv(out, header, columns);
}

}  // namespace specgraph
