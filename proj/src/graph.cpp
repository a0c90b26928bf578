#include "branchsys/graph.hpp"

#include "branchsys/json_io.hpp"

#include <algorithm>

namespace branchsys {

DirectedGraph::DirectedGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
                             const GraphLimits& limits)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.size() > limits.max_vertices) {
    throw InputError("graph has " + std::to_string(vertices_.size()) +
                     " vertices, limit is " + std::to_string(limits.max_vertices));
  }
  if (edges_.size() > limits.max_edges) {
    throw InputError("graph has " + std::to_string(edges_.size()) + " edges, limit is " +
                     std::to_string(limits.max_edges));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertex_ids_.emplace(vertices_[i], i).second) {
      throw InputError("duplicate vertex " + vertices_[i]);
    }
  }
  out_.resize(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!edge_ids_.emplace(e.id, i).second) throw InputError("duplicate edge " + e.id);
    const auto s = vertex_index(e.src);
    if (!s) throw InputError("dangling vertex " + e.src + " (source of edge " + e.id + ")");
    const auto d = vertex_index(e.dst);
    if (!d) throw InputError("dangling vertex " + e.dst + " (range of edge " + e.id + ")");
    src_.push_back(*s);
    dst_.push_back(*d);
    out_[*s].push_back(i);
  }
}

std::optional<std::size_t> DirectedGraph::vertex_index(std::string_view id) const {
  auto it = vertex_ids_.find(std::string(id));
  if (it == vertex_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DirectedGraph::edge_index(std::string_view id) const {
  auto it = edge_ids_.find(std::string(id));
  if (it == edge_ids_.end()) return std::nullopt;
  return it->second;
}

DirectedGraph parse_graph(std::string_view json_text, const GraphLimits& limits) {
  return graph_from_json(parse_json_document(json_text), "", limits);
}

std::string graph_to_json(const DirectedGraph& g) { return to_json(g).dump(2); }

VertexClass classify_vertices(const DirectedGraph& g) {
  VertexClass vc;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    if (g.out_edges(v).empty()) {
      vc.sinks.push_back(g.vertices()[v]);
    } else {
      vc.regular.insert(g.vertices()[v]);
    }
  }
  std::sort(vc.sinks.begin(), vc.sinks.end());
  for (std::size_t i = 0; i < vc.sinks.size(); ++i) vc.sink_index[vc.sinks[i]] = i + 1;
  return vc;
}

}  // namespace branchsys
