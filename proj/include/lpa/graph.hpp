#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lpa {

using VertexId = int;
using EdgeId = int;

enum class VertexKind { regular, sink };

struct EdgeInfo {
  std::string name;
  VertexId source;
  VertexId range;
};

//! A finite directed multigraph with ordered vertex and edge lists.
//!
//! Edge order is fixed at construction. The special edge of a regular vertex
//! v is the last declared edge with source v; normal forms of the path
//! algebra are built around that choice.
class Graph {
 public:
  //! Builds a graph from name lists, validating names and endpoints.
  Graph(std::vector<std::string> vertices, std::vector<EdgeInfo> edges);

  //! Parses the line format `vertex <name>` / `edge <name> <src> <dst>`,
  //! with `#` starting a comment. Throws ParseError on malformed input.
  static Graph parse(std::string_view text);
  //! One vertex `v` and loops `e1..en` in index order.
  static Graph rose(int n);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const EdgeInfo& edge(EdgeId e) const { return edges_.at(e); }
  const std::string& edge_name(EdgeId e) const { return edges_.at(e).name; }
  VertexId source(EdgeId e) const { return edges_[e].source; }
  VertexId range(EdgeId e) const { return edges_[e].range; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;
  //! Vertex id by name, throwing lpa::Error when absent.
  VertexId vertex(std::string_view name) const;
  //! Edge id by name, throwing lpa::Error when absent.
  EdgeId edge_id(std::string_view name) const;

  //! Edges with source v, in declaration order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  VertexKind classify_vertex(VertexId v) const;
  //! The special edge γ(v), or -1 for a sink.
  EdgeId special_edge(VertexId v) const { return special_.at(v); }

  //! Number of petals when this is a rose graph (one vertex, at least one
  //! edge, every edge a loop), else nullopt. Petal i is the i-th edge.
  std::optional<int> rose_petals() const;

  //! Text in the parse() format.
  std::string render() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<EdgeInfo> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<EdgeId> special_;
};

using GraphPtr = std::shared_ptr<const Graph>;

GraphPtr make_graph(Graph g);
GraphPtr rose_graph(int n);

//! A finite path. Empty paths carry their base vertex.
struct Path {
  VertexId base = 0;
  std::vector<EdgeId> edges;

  //! Validated constructor; base must equal s(edges[0]) when nonempty.
  static Path make(const Graph& g, VertexId base, std::vector<EdgeId> edges);
  static Path of_edges(const Graph& g, std::vector<EdgeId> edges);
  static Path vertex(VertexId v) { return Path{v, {}}; }

  std::size_t length() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  VertexId source() const { return base; }
  VertexId range(const Graph& g) const { return edges.empty() ? base : g.range(edges.back()); }
  bool is_closed(const Graph& g) const { return !edges.empty() && range(g) == base; }

  //! Concatenation; throws when r(*this) != s(other).
  Path concat(const Graph& g, const Path& other) const;
  std::string str(const Graph& g) const;

  friend bool operator==(const Path& a, const Path& b) = default;
  friend auto operator<=>(const Path& a, const Path& b) = default;
};

//! The rotation class Π_c of a closed path.
struct ClosedPathClass {
  Path path;
  std::vector<Path> rotations;  // c_1 = c, c_2, ..., c_t
  std::size_t period = 0;       // smallest d with c = (first d edges)^(t/d)
  bool primitive = false;

  std::size_t distinct_rotations() const { return period; }
};

ClosedPathClass rotations(const Graph& g, const Path& c);

}  // namespace lpa
