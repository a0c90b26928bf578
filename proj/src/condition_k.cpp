#include "branchsys/condition_k.hpp"

#include <algorithm>
#include <optional>

namespace branchsys {

namespace {

// Vertices from which `target` is reachable (target included).
std::vector<bool> can_reach(const DirectedGraph& g, std::size_t target) {
  std::vector<std::vector<std::size_t>> in(g.vertices().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) in[g.dst_index(e)].push_back(g.src_index(e));
  std::vector<bool> seen(g.vertices().size(), false);
  std::vector<std::size_t> stack{target};
  seen[target] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t x : in[u]) {
      if (!seen[x]) {
        seen[x] = true;
        stack.push_back(x);
      }
    }
  }
  return seen;
}

struct ReturnSearch {
  const DirectedGraph& g;
  std::size_t base;
  std::size_t max_count;
  bool stop_on_cycle;
  std::vector<bool> on_path;
  std::vector<bool> reaches_base;
  std::vector<std::size_t> edges;
  FirstReturnSearch result;

  ReturnSearch(const DirectedGraph& graph, std::size_t v, std::size_t count, bool stop)
      : g(graph), base(v), max_count(count), stop_on_cycle(stop),
        on_path(graph.vertices().size(), false), reaches_base(can_reach(graph, v)) {
    on_path[base] = true;
    visit(base);
  }

  bool done() const {
    return result.paths.size() >= max_count || (stop_on_cycle && result.internal_cycle);
  }

  void visit(std::size_t u) {
    for (std::size_t e : g.out_edges(u)) {
      if (done()) return;
      const std::size_t w = g.dst_index(e);
      edges.push_back(e);
      if (w == base) {
        EdgePath p;
        for (std::size_t k : edges) p.push_back(g.edges()[k].id);
        result.paths.push_back(std::move(p));
      } else if (on_path[w]) {
        result.internal_cycle = true;
      } else if (reaches_base[w]) {
        on_path[w] = true;
        visit(w);
        on_path[w] = false;
      }
      edges.pop_back();
    }
  }
};

// Edge sequence of a cycle from w back to w that never touches `avoid`.
std::optional<std::vector<std::size_t>> cycle_avoiding(const DirectedGraph& g, std::size_t w,
                                                       std::size_t avoid) {
  const std::size_t n = g.vertices().size();
  std::vector<std::optional<std::size_t>> via(n);  // edge used to reach vertex
  std::vector<std::size_t> queue{w};
  std::vector<bool> seen(n, false);
  seen[w] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (std::size_t e : g.out_edges(u)) {
      const std::size_t x = g.dst_index(e);
      if (x == avoid) continue;
      if (x == w) {
        std::vector<std::size_t> cycle{e};
        for (std::size_t cur = u; cur != w; cur = g.src_index(*via[cur])) {
          cycle.push_back(*via[cur]);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (!seen[x]) {
        seen[x] = true;
        via[x] = e;
        queue.push_back(x);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

FirstReturnSearch search_first_returns(const DirectedGraph& g, const std::string& v,
                                       std::size_t max_count) {
  const auto base = g.vertex_index(v);
  if (!base) throw InputError("unknown vertex " + v);
  return ReturnSearch(g, *base, std::max<std::size_t>(max_count, 1), true).result;
}

std::vector<EdgePath> first_return_paths(const DirectedGraph& g, const std::string& v,
                                         std::size_t max_count) {
  return search_first_returns(g, v, max_count).paths;
}

const char* to_string(KStatus s) {
  switch (s) {
    case KStatus::NoLoop:
      return "no-loop";
    case KStatus::TwoReturnPaths:
      return "two-return-paths";
    case KStatus::Violation:
      return "VIOLATION";
  }
  return "?";
}

KReport check_condition_K(const DirectedGraph& g) {
  KReport report;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    VertexK vk;
    vk.vertex = g.vertices()[v];
    // Two simple first returns settle the vertex; fewer need the detour rule.
    const auto paths = ReturnSearch(g, v, 2, false).result.paths;
    if (paths.empty()) {
      vk.status = KStatus::NoLoop;
    } else if (paths.size() >= 2) {
      vk.status = KStatus::TwoReturnPaths;
      vk.witness = {paths[0], paths[1]};
    } else {
      // Unique simple first return P: look for a detour around a cycle that
      // hangs off one of its internal vertices and avoids v.
      const EdgePath& p = paths[0];
      vk.status = KStatus::Violation;
      for (std::size_t i = 1; i < p.size(); ++i) {
        const std::size_t w = g.src_index(*g.edge_index(p[i]));
        if (auto cycle = cycle_avoiding(g, w, v)) {
          EdgePath detour(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
          for (std::size_t e : *cycle) detour.push_back(g.edges()[e].id);
          detour.insert(detour.end(), p.begin() + static_cast<std::ptrdiff_t>(i), p.end());
          vk.status = KStatus::TwoReturnPaths;
          vk.witness = {p, std::move(detour)};
          break;
        }
      }
    }
    if (vk.status == KStatus::Violation) report.satisfied = false;
    report.per_vertex.push_back(std::move(vk));
  }
  return report;
}

bool is_return_path(const DirectedGraph& g, const std::string& v, const EdgePath& p) {
  if (p.empty()) return false;
  auto cur = g.vertex_index(v);
  if (!cur) return false;
  for (const auto& id : p) {
    const auto e = g.edge_index(id);
    if (!e || g.src_index(*e) != *cur) return false;
    cur = g.dst_index(*e);
  }
  return g.vertices()[*cur] == v;
}

bool is_prefix(const EdgePath& a, const EdgePath& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace branchsys
