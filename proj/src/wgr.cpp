#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "hardy/harness.hpp"

namespace hardy {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(ErrorKind kind, std::size_t line, const std::string& reason) {
  throw Error(kind, "line " + std::to_string(line) + ": " + reason, {line});
}

double parse_number(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    fail(ErrorKind::ParseError, line, "'" + std::string(token) + "' is not a finite decimal number");
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_display(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_real17(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ParsedGraph parse_wgr(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, VertexId, std::less<>> ids;
  std::vector<double> masses;
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> edge_pairs;
  std::vector<VertexId> boundary;
  bool has_boundary = false;

  auto lookup = [&](std::string_view name, std::size_t line) {
    const auto it = ids.find(name);
    if (it == ids.end()) fail(ErrorKind::UnknownVertex, line, "vertex '" + std::string(name) + "' is not declared");
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tok = tokenize(line);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok[0] == "vertex") {
      if (tok.size() != 3) fail(ErrorKind::ParseError, line_no, "expected 'vertex <name> <mass>'");
      if (ids.count(tok[1])) fail(ErrorKind::DuplicateVertex, line_no, "vertex '" + std::string(tok[1]) + "' declared twice");
      const double mass = parse_number(tok[2], line_no);
      ids.emplace(std::string(tok[1]), names.size());
      names.emplace_back(tok[1]);
      masses.push_back(mass);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) fail(ErrorKind::ParseError, line_no, "expected 'edge <name> <name> <conductance>'");
      const VertexId u = lookup(tok[1], line_no);
      const VertexId v = lookup(tok[2], line_no);
      const double kappa = parse_number(tok[3], line_no);
      if (!edge_pairs.insert(std::minmax(u, v)).second)
        fail(ErrorKind::DuplicateEdge, line_no,
             "edge " + std::string(tok[1]) + " - " + std::string(tok[2]) + " declared twice");
      edges.push_back({u, v, kappa});
    } else if (tok[0] == "boundary") {
      if (tok.size() != 2) fail(ErrorKind::ParseError, line_no, "expected 'boundary <name>'");
      const VertexId v = lookup(tok[1], line_no);
      for (VertexId b : boundary)
        if (b == v) fail(ErrorKind::ParseError, line_no, "boundary vertex '" + std::string(tok[1]) + "' declared twice");
      boundary.push_back(v);
      has_boundary = true;
    } else {
      fail(ErrorKind::ParseError, line_no, "unknown directive '" + std::string(tok[0]) + "'");
    }
  }
  if (masses.empty()) throw Error(ErrorKind::ParseError, "no vertices declared", {line_no});

  ParsedGraph out{WeightedGraph(std::move(masses), std::move(edges), std::move(names)), std::nullopt};
  validate(out.graph);
  if (has_boundary) out.boundary = VertexSet(std::move(boundary));
  return out;
}

std::string serialize_wgr(const WeightedGraph& graph, const std::optional<VertexSet>& boundary) {
  std::ostringstream os;
  for (VertexId v = 0; v < graph.vertex_count(); ++v)
    os << "vertex " << graph.label(v) << ' ' << format_real(graph.mass(v)) << '\n';
  for (const auto& e : graph.edges())
    os << "edge " << graph.label(e.u) << ' ' << graph.label(e.v) << ' ' << format_real(e.conductance) << '\n';
  if (boundary)
    for (VertexId v : *boundary) os << "boundary " << graph.label(v) << '\n';
  return os.str();
}

VertexSet resolve_vertices(const WeightedGraph& graph, std::string_view names) {
  std::vector<VertexId> out;
  std::size_t pos = 0;
  while (pos <= names.size()) {
    const std::size_t comma = names.find(',', pos);
    const std::string_view name =
        names.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    pos = comma == std::string_view::npos ? names.size() + 1 : comma + 1;
    if (name.empty()) continue;
    bool found = false;
    for (VertexId v = 0; v < graph.vertex_count() && !found; ++v)
      if (graph.label(v) == name) {
        out.push_back(v);
        found = true;
      }
    if (!found) throw Error(ErrorKind::UnknownVertex, "vertex '" + std::string(name) + "' is not in the graph");
  }
  if (out.empty()) throw Error(ErrorKind::EmptySet, "empty vertex list");
  return VertexSet(std::move(out));
}

}  // namespace hardy
