#pragma once

#include "branchsys/branching.hpp"
#include "branchsys/condition_k.hpp"
#include "branchsys/graph.hpp"
#include "branchsys/ppoly.hpp"
#include "branchsys/representation.hpp"
#include "branchsys/transfer.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace branchsys {

using Json = nlohmann::ordered_json;

/// Throws InputError("malformed JSON: ...").
Json parse_json_document(std::string_view text);

// Readers throw InputError whose message starts with the JSON path of the
// offending element, e.g. "/R/e1/0/lo: expected a rational string".
Rational rational_from_json(const Json& j, const std::string& path);
IntervalSet intervals_from_json(const Json& j, const std::string& path);
DirectedGraph graph_from_json(const Json& j, const std::string& path, const GraphLimits& limits);
BranchingSystem system_from_json(const Json& j, const GraphLimits& limits);
/// Pieces carry coefficients in powers of x; overlapping pieces add up.
PPoly ppoly_from_json(const Json& j, const std::string& path = "");

Json to_json(const Rational& r);
Json to_json(const IntervalSet& s);
Json to_json(const DirectedGraph& g);
Json to_json(const BranchingSystem& bs);
Json to_json(const PPoly& f);
Json to_json(const KReport& r);
Json to_json(const std::vector<Violation>& v);
Json to_json(const RelationReport& r);
Json to_json(const DualityResult& r);
Json complex_json(Complex c);

}  // namespace branchsys
