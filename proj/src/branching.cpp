#include "branchsys/branching.hpp"

#include "branchsys/json_io.hpp"

#include <algorithm>
#include <numeric>

namespace branchsys {

namespace {

IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b) {
  return a.subtract(b).unite(b.subtract(a));
}

std::vector<std::size_t> sorted_by_id(const std::vector<std::string>& ids) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
  return order;
}

}  // namespace

const IntervalSet& BranchingSystem::range_set(std::string_view edge) const {
  const auto e = graph.edge_index(edge);
  if (!e) throw InputError("unknown edge " + std::string(edge));
  return R[*e];
}

const IntervalSet& BranchingSystem::domain_set(std::string_view vertex) const {
  const auto v = graph.vertex_index(vertex);
  if (!v) throw InputError("unknown vertex " + std::string(vertex));
  return D[*v];
}

const PAMap& BranchingSystem::map(std::string_view edge) const {
  const auto e = graph.edge_index(edge);
  if (!e) throw InputError("unknown edge " + std::string(edge));
  return f[*e];
}

BranchingSystem build_default(const DirectedGraph& g) {
  BranchingSystem bs;
  bs.graph = g;
  const auto& edges = g.edges();
  const auto& vertices = g.vertices();

  std::vector<std::string> edge_ids;
  for (const auto& e : edges) edge_ids.push_back(e.id);
  const auto edge_order = sorted_by_id(edge_ids);

  std::vector<Interval> range_interval(edges.size(), Interval(0, 1));
  for (std::size_t i = 0; i < edge_order.size(); ++i) {
    range_interval[edge_order[i]] = Interval(Rational(i), Rational(i + 1));
  }
  bs.R.assign(edges.size(), {});
  for (std::size_t e = 0; e < edges.size(); ++e) bs.R[e] = IntervalSet(range_interval[e]);

  const VertexClass vc = classify_vertices(g);
  bs.D.assign(vertices.size(), {});
  std::vector<Interval> all;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    auto sink = vc.sink_index.find(vertices[v]);
    if (sink != vc.sink_index.end()) {
      const Rational i(sink->second);
      bs.D[v] = IntervalSet(Interval(-i, -i + 1));
      all.push_back(bs.D[v].parts().front());
    } else {
      IntervalSet d;
      for (std::size_t e : g.out_edges(v)) d = d.unite(bs.R[e]);
      bs.D[v] = d;
    }
  }
  for (const auto& iv : range_interval) all.push_back(iv);
  bs.X = IntervalSet(std::move(all));

  bs.f.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::size_t target = g.dst_index(e);
    const Interval& range = range_interval[e];
    if (g.out_edges(target).empty()) {
      bs.f[e] = PAMap({affine_onto(bs.D[target].parts().front(), range)});
      continue;
    }
    std::vector<std::size_t> outgoing = g.out_edges(target);
    std::sort(outgoing.begin(), outgoing.end(),
              [&](auto a, auto b) { return edges[a].id < edges[b].id; });
    const Rational k(outgoing.size());
    std::vector<AffinePiece> pieces;
    for (std::size_t m = 0; m < outgoing.size(); ++m) {
      const Interval sub(range.lo + range.length() * Rational(m) / k,
                         range.lo + range.length() * Rational(m + 1) / k);
      pieces.push_back(affine_onto(range_interval[outgoing[m]], sub));
    }
    bs.f[e] = PAMap(std::move(pieces));
  }
  return bs;
}

BranchingSystem load_system(std::string_view json_text, const GraphLimits& limits) {
  return system_from_json(parse_json_document(json_text), limits);
}

std::string save_system(const BranchingSystem& bs) { return to_json(bs).dump(2); }

std::string condition_label(Condition c) {
  switch (c) {
    case Condition::RangesDisjoint:
      return "ranges-disjoint";
    case Condition::DomainsDisjoint:
      return "domains-disjoint";
    case Condition::RangeInsideSourceDomain:
      return "range-inside-source-domain";
    case Condition::DomainIsUnionOfRanges:
      return "domain-is-union-of-ranges";
    case Condition::MapOntoRange:
      return "map-onto-range";
    case Condition::MapInvertible:
      return "map-invertible";
    case Condition::TotalSpace:
      return "total-space";
  }
  return "?";
}

std::vector<Violation> validate(const BranchingSystem& bs) {
  std::vector<Violation> out;
  const auto& g = bs.graph;
  const auto& edges = g.edges();
  const auto& vertices = g.vertices();

  for (std::size_t d = 0; d < edges.size(); ++d) {
    for (std::size_t e = d + 1; e < edges.size(); ++e) {
      IntervalSet common = bs.R[d].intersect(bs.R[e]);
      if (!common.empty()) {
        out.push_back({Condition::RangesDisjoint, {edges[d].id, edges[e].id}, std::move(common),
                       "R sets overlap"});
      }
    }
  }
  for (std::size_t u = 0; u < vertices.size(); ++u) {
    for (std::size_t v = u + 1; v < vertices.size(); ++v) {
      IntervalSet common = bs.D[u].intersect(bs.D[v]);
      if (!common.empty()) {
        out.push_back({Condition::DomainsDisjoint, {vertices[u], vertices[v]}, std::move(common),
                       "D sets overlap"});
      }
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    IntervalSet outside = bs.R[e].subtract(bs.D[g.src_index(e)]);
    if (!outside.empty()) {
      out.push_back({Condition::RangeInsideSourceDomain, {edges[e].id, edges[e].src},
                     std::move(outside), "R not contained in D of its source"});
    }
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (g.out_edges(v).empty()) continue;
    IntervalSet ranges;
    for (std::size_t e : g.out_edges(v)) ranges = ranges.unite(bs.R[e]);
    IntervalSet diff = symmetric_difference(bs.D[v], ranges);
    if (!diff.empty()) {
      out.push_back({Condition::DomainIsUnionOfRanges, {vertices[v]}, std::move(diff),
                     "D differs from the union of outgoing R sets"});
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const PAMap& f = bs.f[e];
    IntervalSet dom_diff = symmetric_difference(f.domain(), bs.target_domain(e));
    if (!dom_diff.empty()) {
      out.push_back({Condition::MapOntoRange, {edges[e].id, edges[e].dst}, std::move(dom_diff),
                     "map domain differs from D of the range vertex"});
    }
    IntervalSet img_diff = symmetric_difference(f.image(), bs.R[e]);
    if (!img_diff.empty()) {
      out.push_back({Condition::MapOntoRange, {edges[e].id}, std::move(img_diff),
                     "map image differs from R"});
    }
    if (auto defect = f.injectivity_defect()) {
      out.push_back({Condition::MapInvertible, {edges[e].id}, {}, *defect});
    }
  }
  IntervalSet covered;
  for (const auto& r : bs.R) covered = covered.unite(r);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (g.out_edges(v).empty()) covered = covered.unite(bs.D[v]);
  }
  IntervalSet diff = symmetric_difference(bs.X, covered);
  if (!diff.empty()) {
    out.push_back({Condition::TotalSpace, {}, std::move(diff),
                   "X differs from the union of R sets and sink D sets"});
  }
  return out;
}

InvalidSystem::InvalidSystem(std::vector<Violation> violations)
    : std::runtime_error("invalid branching system: " + std::to_string(violations.size()) +
                         " violation(s), first: " +
                         (violations.empty() ? std::string("none")
                                             : condition_label(violations.front().item) + " " +
                                                   violations.front().detail)),
      violations_(std::move(violations)) {}

Rational NonsingularSystem::apply(const Rational& x) const {
  if (Y.contains(x)) return x;
  for (std::size_t e = 0; e < branches.size(); ++e) {
    if (base.R[e].contains(x)) return branches[e].apply(x);
  }
  throw std::domain_error("point " + format_rational(x) + " outside X");
}

NonsingularSystem nonsingular_map(BranchingSystem bs) {
  auto violations = validate(bs);
  if (!violations.empty()) throw InvalidSystem(std::move(violations));
  NonsingularSystem ns;
  IntervalSet ranges;
  for (const auto& r : bs.R) ranges = ranges.unite(r);
  ns.Y = bs.X.subtract(ranges);
  for (const auto& f : bs.f) ns.branches.push_back(f.inverse());
  ns.base = std::move(bs);
  return ns;
}

IntervalSet preimage_F(const NonsingularSystem& ns, const IntervalSet& a) {
  IntervalSet out = a.intersect(ns.Y);
  for (std::size_t e = 0; e < ns.base.f.size(); ++e) {
    out = out.unite(ns.base.f[e].image_of(a.intersect(ns.base.target_domain(e))));
  }
  return out;
}

}  // namespace branchsys
