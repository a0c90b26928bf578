#pragma once

#include "branchsys/graph.hpp"
#include "branchsys/interval_set.hpp"
#include "branchsys/pamap.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace branchsys {

/// (X, mu, {R_e}, {D_v}, {f_e}) over Lebesgue measure. Families are indexed
/// like graph.edges() and graph.vertices(); f[e] maps D_{r(e)} onto R_e.
struct BranchingSystem {
  DirectedGraph graph;
  IntervalSet X;
  std::vector<IntervalSet> R;
  std::vector<IntervalSet> D;
  std::vector<PAMap> f;

  const IntervalSet& range_set(std::string_view edge) const;
  const IntervalSet& domain_set(std::string_view vertex) const;
  const PAMap& map(std::string_view edge) const;
  /// D_{r(e)} for edge index e.
  const IntervalSet& target_domain(std::size_t e) const { return D[graph.dst_index(e)]; }

  friend bool operator==(const BranchingSystem&, const BranchingSystem&) = default;
};

/// Interval layout of the existence construction: edges sorted by id get
/// R = [i-1, i), sinks sorted by id get D = [-i, -i+1), regular vertices get
/// the union of their outgoing R's. Maps into an edge whose range is regular
/// split R into equal sub-intervals, one per outgoing edge in id order.
BranchingSystem build_default(const DirectedGraph& g);

/// Does not validate.
BranchingSystem load_system(std::string_view json_text, const GraphLimits& limits = {});
std::string save_system(const BranchingSystem& bs);

/// The defining conditions of a branching system; `TotalSpace` is the
/// requirement that X is covered by the R's and the sink D's.
enum class Condition {
  RangesDisjoint = 1,
  DomainsDisjoint = 2,
  RangeInsideSourceDomain = 3,
  DomainIsUnionOfRanges = 4,
  MapOntoRange = 5,
  MapInvertible = 6,
  TotalSpace = 7,
};

std::string condition_label(Condition c);

struct Violation {
  Condition item;
  std::vector<std::string> ids;
  IntervalSet offending;
  std::string detail;
};

std::vector<Violation> validate(const BranchingSystem& bs);

class InvalidSystem : public std::runtime_error {
 public:
  explicit InvalidSystem(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Branching system together with F: F = f_e^{-1} on R_e, identity on Y.
struct NonsingularSystem {
  BranchingSystem base;
  std::vector<PAMap> branches;  // f_e^{-1}, indexed like edges
  IntervalSet Y;

  /// F(x) for x in X. Throws std::domain_error outside X.
  Rational apply(const Rational& x) const;
};

/// Throws InvalidSystem if validate(bs) is non-empty.
NonsingularSystem nonsingular_map(BranchingSystem bs);

/// F^{-1}(A) = (U_e f_e(A ∩ D_{r(e)})) ∪ (A ∩ Y).
IntervalSet preimage_F(const NonsingularSystem& ns, const IntervalSet& a);

}  // namespace branchsys
