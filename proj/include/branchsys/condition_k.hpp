#pragma once

#include "branchsys/graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace branchsys {

/// Sequence of edge ids.
using EdgePath = std::vector<std::string>;

struct FirstReturnSearch {
  std::vector<EdgePath> paths;
  /// Set when the search met a cycle through an internal vertex that avoids
  /// the base vertex.
  bool internal_cycle = false;
};

/// Depth-first enumeration of simple return paths based at `v` that never
/// revisit `v` internally. Stops after `max_count` paths, or once an internal
/// cycle avoiding `v` has been seen.
FirstReturnSearch search_first_returns(const DirectedGraph& g, const std::string& v,
                                       std::size_t max_count);

std::vector<EdgePath> first_return_paths(const DirectedGraph& g, const std::string& v,
                                         std::size_t max_count);

enum class KStatus { NoLoop, TwoReturnPaths, Violation };

const char* to_string(KStatus s);

struct VertexK {
  std::string vertex;
  KStatus status = KStatus::NoLoop;
  /// Two return paths at the vertex, neither a prefix of the other.
  std::pair<EdgePath, EdgePath> witness;
};

struct KReport {
  bool satisfied = true;
  std::vector<VertexK> per_vertex;  // graph vertex order
};

/// Decides condition (K): every vertex lies on no loop, or on two loops
/// neither of which is an initial subpath of the other.
KReport check_condition_K(const DirectedGraph& g);

/// True when `p` is a path in `g` that starts and ends at `v`.
bool is_return_path(const DirectedGraph& g, const std::string& v, const EdgePath& p);
/// `a` is an initial segment of `b` (or equal).
bool is_prefix(const EdgePath& a, const EdgePath& b);

}  // namespace branchsys
