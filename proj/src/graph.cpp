#include "lpa/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices, std::vector<EdgeInfo> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw Error("graph has no vertices");
  std::set<std::string> seen;
  for (const auto& v : vertices_) {
    if (!valid_name(v)) throw Error("invalid vertex name '" + v + "'");
    if (!seen.insert(v).second) throw Error("duplicate name '" + v + "'");
  }
  for (const auto& e : edges_) {
    if (!valid_name(e.name)) throw Error("invalid edge name '" + e.name + "'");
    if (!seen.insert(e.name).second) throw Error("duplicate name '" + e.name + "'");
    auto nv = static_cast<VertexId>(vertices_.size());
    if (e.source < 0 || e.source >= nv || e.range < 0 || e.range >= nv) {
      throw Error("edge '" + e.name + "' has an undeclared endpoint");
    }
  }
  out_.assign(vertices_.size(), {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) out_[edges_[e].source].push_back(e);
  special_.assign(vertices_.size(), -1);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (!out_[v].empty()) special_[v] = out_[v].back();
  }
}

Graph Graph::parse(std::string_view text) {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::vector<std::string>, std::size_t>> edge_lines;
  std::size_t offset = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::size_t line_start = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string t; words >> t;) w.push_back(t);
    if (w.empty()) continue;
    if (w[0] == "vertex" && w.size() == 2) {
      vertices.push_back(w[1]);
    } else if (w[0] == "edge" && w.size() == 4) {
      edge_lines.emplace_back(std::move(w), line_start);
    } else {
      throw ParseError("expected 'vertex <name>' or 'edge <name> <src> <dst>'", line_start);
    }
  }
  std::vector<EdgeInfo> edges;
  for (const auto& [w, pos] : edge_lines) {
    auto idx = [&](const std::string& n) {
      auto it = std::find(vertices.begin(), vertices.end(), n);
      if (it == vertices.end()) throw ParseError("undeclared endpoint '" + n + "'", pos);
      return static_cast<VertexId>(it - vertices.begin());
    };
    edges.push_back({w[1], idx(w[2]), idx(w[3])});
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph Graph::rose(int n) {
  if (n < 1) throw Error("rose graph needs at least one petal");
  std::vector<EdgeInfo> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({"e" + std::to_string(i), 0, 0});
  return Graph({"v"}, std::move(edges));
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == name) return static_cast<VertexId>(i);
  }
  return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name == name) return static_cast<EdgeId>(i);
  }
  return std::nullopt;
}

VertexId Graph::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw Error("unknown vertex '" + std::string(name) + "'");
}

EdgeId Graph::edge_id(std::string_view name) const {
  if (auto e = find_edge(name)) return *e;
  throw Error("unknown edge '" + std::string(name) + "'");
}

VertexKind Graph::classify_vertex(VertexId v) const {
  if (v < 0 || v >= static_cast<VertexId>(vertices_.size())) throw Error("unknown vertex id");
  return out_[v].empty() ? VertexKind::sink : VertexKind::regular;
}

std::optional<int> Graph::rose_petals() const {
  if (vertices_.size() != 1 || edges_.empty()) return std::nullopt;
  return static_cast<int>(edges_.size());
}

std::string Graph::render() const {
  std::string out;
  for (const auto& v : vertices_) out += "vertex " + v + "\n";
  for (const auto& e : edges_) {
    out += "edge " + e.name + " " + vertices_[e.source] + " " + vertices_[e.range] + "\n";
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.name != y.name || x.source != y.source || x.range != y.range) return false;
  }
  return true;
}

GraphPtr make_graph(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

GraphPtr rose_graph(int n) { return make_graph(Graph::rose(n)); }

Path Path::make(const Graph& g, VertexId base, std::vector<EdgeId> edges) {
  if (base < 0 || base >= static_cast<VertexId>(g.num_vertices())) throw Error("unknown vertex id");
  VertexId at = base;
  for (EdgeId e : edges) {
    if (e < 0 || e >= static_cast<EdgeId>(g.num_edges())) throw Error("unknown edge id");
    if (g.source(e) != at) throw Error("edges do not form a path at '" + g.edge_name(e) + "'");
    at = g.range(e);
  }
  return Path{base, std::move(edges)};
}

Path Path::of_edges(const Graph& g, std::vector<EdgeId> edges) {
  if (edges.empty()) throw Error("of_edges needs at least one edge");
  VertexId base = g.source(edges.front());
  return make(g, base, std::move(edges));
}

Path Path::concat(const Graph& g, const Path& other) const {
  if (range(g) != other.base) throw Error("paths cannot be concatenated: range/source mismatch");
  Path r = *this;
  r.edges.insert(r.edges.end(), other.edges.begin(), other.edges.end());
  return r;
}

std::string Path::str(const Graph& g) const {
  if (edges.empty()) return g.vertex_name(base);
  std::string s;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) s += ' ';
    s += g.edge_name(edges[i]);
  }
  return s;
}

ClosedPathClass rotations(const Graph& g, const Path& c) {
  if (!c.is_closed(g)) throw Error("rotations need a closed path of positive length");
  ClosedPathClass out;
  out.path = c;
  const std::size_t t = c.length();
  for (std::size_t k = 0; k < t; ++k) {
    Path r;
    r.edges.reserve(t);
    for (std::size_t i = 0; i < t; ++i) r.edges.push_back(c.edges[(k + i) % t]);
    r.base = g.source(r.edges.front());
    out.rotations.push_back(std::move(r));
  }
  out.period = t;
  for (std::size_t d = 1; d < t; ++d) {
    if (t % d == 0 && out.rotations[d] == c) {
      out.period = d;
      break;
    }
  }
  out.primitive = out.period == t;
  return out;
}

}  // namespace lpa
