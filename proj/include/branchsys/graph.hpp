#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace branchsys {

/// Bad input: malformed files, unknown ids, schema violations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::string id;
  std::string src;
  std::string dst;  // range vertex r(e)

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct GraphLimits {
  std::size_t max_vertices = 10'000;
  std::size_t max_edges = 10'000;
};

/// Finite directed graph E = (E0, E1, r, s). Immutable once constructed;
/// element order is preserved from construction.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  /// Throws InputError on duplicate ids, dangling references or exceeded limits.
  DirectedGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
                const GraphLimits& limits = {});

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> vertex_index(std::string_view id) const;
  std::optional<std::size_t> edge_index(std::string_view id) const;
  std::size_t src_index(std::size_t edge) const { return src_[edge]; }
  std::size_t dst_index(std::size_t edge) const { return dst_[edge]; }
  /// Edge indices leaving a vertex, in construction order.
  const std::vector<std::size_t>& out_edges(std::size_t vertex) const { return out_[vertex]; }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_ids_;
  std::unordered_map<std::string, std::size_t> edge_ids_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> dst_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Reads {"vertices": [...], "edges": [{"id","src","dst"}...]}.
DirectedGraph parse_graph(std::string_view json_text, const GraphLimits& limits = {});
std::string graph_to_json(const DirectedGraph& g);

struct VertexClass {
  std::vector<std::string> sinks;  // lexicographic
  std::set<std::string> regular;
  std::map<std::string, std::size_t> sink_index;  // 1-based
};

VertexClass classify_vertices(const DirectedGraph& g);

}  // namespace branchsys
