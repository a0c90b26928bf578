#include "branchsys/json_io.hpp"

#include <cmath>

namespace branchsys {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

const std::string& string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

void require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
}

std::vector<Complex> coefficient_list(const Json& re, const Json* im, const std::string& path) {
  require_array(re, path + "/re");
  std::vector<Complex> out(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) {
    if (!re[k].is_number()) fail(path + "/re/" + std::to_string(k), "expected a number");
    out[k].real(re[k].get<double>());
  }
  if (im) {
    require_array(*im, path + "/im");
    if (im->size() > out.size()) out.resize(im->size());
    for (std::size_t k = 0; k < im->size(); ++k) {
      if (!(*im)[k].is_number()) fail(path + "/im/" + std::to_string(k), "expected a number");
      out[k].imag((*im)[k].get<double>());
    }
  }
  return out;
}

Interval interval_from(const Json& j, const char* lo_key, const char* hi_key,
                       const std::string& path) {
  Rational lo = rational_from_json(member(j, lo_key, path), path + "/" + lo_key);
  Rational hi = rational_from_json(member(j, hi_key, path), path + "/" + hi_key);
  if (!(lo < hi)) fail(path, "empty interval (lo must be < hi)");
  return Interval(std::move(lo), std::move(hi));
}

}  // namespace

Json parse_json_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

IntervalSet intervals_from_json(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    parts.push_back(interval_from(j[i], "lo", "hi", path + "/" + std::to_string(i)));
  }
  return IntervalSet(std::move(parts));
}

DirectedGraph graph_from_json(const Json& j, const std::string& path, const GraphLimits& limits) {
  const Json& vs = member(j, "vertices", path);
  require_array(vs, path + "/vertices");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    vertices.push_back(string_at(vs[i], path + "/vertices/" + std::to_string(i)));
  }
  const Json& es = member(j, "edges", path);
  require_array(es, path + "/edges");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = path + "/edges/" + std::to_string(i);
    edges.push_back({string_at(member(es[i], "id", p), p + "/id"),
                     string_at(member(es[i], "src", p), p + "/src"),
                     string_at(member(es[i], "dst", p), p + "/dst")});
  }
  return DirectedGraph(std::move(vertices), std::move(edges), limits);
}

BranchingSystem system_from_json(const Json& j, const GraphLimits& limits) {
  BranchingSystem bs;
  bs.graph = graph_from_json(member(j, "graph", ""), "/graph", limits);
  bs.X = intervals_from_json(member(j, "X", ""), "/X");
  const auto& g = bs.graph;

  const Json& r = member(j, "R", "");
  if (!r.is_object()) fail("/R", "expected an object keyed by edge id");
  const Json& d = member(j, "D", "");
  if (!d.is_object()) fail("/D", "expected an object keyed by vertex id");
  const Json& f = member(j, "f", "");
  if (!f.is_object()) fail("/f", "expected an object keyed by edge id");

  for (const auto& [key, _] : r.items()) {
    if (!g.edge_index(key)) fail("/R/" + key, "unknown edge");
  }
  for (const auto& [key, _] : d.items()) {
    if (!g.vertex_index(key)) fail("/D/" + key, "unknown vertex");
  }
  for (const auto& [key, _] : f.items()) {
    if (!g.edge_index(key)) fail("/f/" + key, "unknown edge");
  }

  for (const auto& e : g.edges()) {
    bs.R.push_back(intervals_from_json(member(r, e.id.c_str(), "/R"), "/R/" + e.id));
    const std::string fp = "/f/" + e.id;
    const Json& pieces = member(f, e.id.c_str(), "/f");
    require_array(pieces, fp);
    std::vector<AffinePiece> affine;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string pp = fp + "/" + std::to_string(i);
      Interval src = interval_from(pieces[i], "src_lo", "src_hi", pp);
      Rational a = rational_from_json(member(pieces[i], "a", pp), pp + "/a");
      if (a == 0) fail(pp + "/a", "slope must be non-zero");
      Rational b = rational_from_json(member(pieces[i], "b", pp), pp + "/b");
      affine.emplace_back(std::move(src), std::move(a), std::move(b));
    }
    bs.f.emplace_back(std::move(affine));
  }
  for (const auto& v : g.vertices()) {
    bs.D.push_back(intervals_from_json(member(d, v.c_str(), "/D"), "/D/" + v));
  }
  return bs;
}

PPoly ppoly_from_json(const Json& j, const std::string& path) {
  const Json& pieces = member(j, "pieces", path);
  require_array(pieces, path + "/pieces");
  std::vector<PolyPiece> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string p = path + "/pieces/" + std::to_string(i);
    const Interval support = interval_from(pieces[i], "lo", "hi", p);
    auto im = pieces[i].find("im");
    auto coeffs = coefficient_list(member(pieces[i], "re", p),
                                   im == pieces[i].end() ? nullptr : &*im, p);
    if (static_cast<int>(coeffs.size()) - 1 > PPoly::kMaxDegree) {
      fail(p, "degree exceeds " + std::to_string(PPoly::kMaxDegree));
    }
    for (auto& piece : PPoly::from_global(support, coeffs).pieces()) out.push_back(piece);
  }
  return PPoly::from_pieces(std::move(out));
}

Json to_json(const Rational& r) { return format_rational(r); }

Json to_json(const IntervalSet& s) {
  Json out = Json::array();
  for (const auto& iv : s.parts()) {
    out.push_back({{"lo", format_rational(iv.lo)}, {"hi", format_rational(iv.hi)}});
  }
  return out;
}

Json to_json(const DirectedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

Json to_json(const BranchingSystem& bs) {
  Json r = Json::object(), d = Json::object(), f = Json::object();
  const auto& g = bs.graph;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    r[g.edges()[e].id] = to_json(bs.R[e]);
    Json pieces = Json::array();
    for (const auto& p : bs.f[e].pieces()) {
      pieces.push_back({{"src_lo", format_rational(p.src.lo)},
                        {"src_hi", format_rational(p.src.hi)},
                        {"a", format_rational(p.slope)},
                        {"b", format_rational(p.offset)}});
    }
    f[g.edges()[e].id] = std::move(pieces);
  }
  for (std::size_t v = 0; v < g.vertices().size(); ++v) d[g.vertices()[v]] = to_json(bs.D[v]);
  return {{"graph", to_json(g)}, {"X", to_json(bs.X)}, {"R", std::move(r)},
          {"D", std::move(d)},   {"f", std::move(f)}};
}

Json to_json(const PPoly& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    Json re = Json::array(), im = Json::array();
    for (const auto& c : p.global_coeffs()) {
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    pieces.push_back({{"lo", format_rational(p.support.lo)},
                      {"hi", format_rational(p.support.hi)},
                      {"re", std::move(re)},
                      {"im", std::move(im)}});
  }
  return {{"pieces", std::move(pieces)}};
}

Json to_json(const KReport& r) {
  Json per = Json::object();
  for (const auto& v : r.per_vertex) {
    Json entry = {{"status", to_string(v.status)}};
    if (v.status == KStatus::TwoReturnPaths) {
      entry["witness"] = Json::array({v.witness.first, v.witness.second});
    }
    per[v.vertex] = std::move(entry);
  }
  return {{"satisfied", r.satisfied}, {"per_vertex", std::move(per)}};
}

Json to_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) {
    Json item = static_cast<int>(v.item);
    if (v.item == Condition::TotalSpace) item = "X";
    out.push_back({{"item", std::move(item)},
                   {"condition", condition_label(v.item)},
                   {"ids", v.ids},
                   {"offending", to_json(v.offending)},
                   {"detail", v.detail}});
  }
  return out;
}

Json to_json(const RelationReport& r) {
  Json rel = Json::array();
  for (const auto& x : r.relations) {
    Json entry = {{"relation", x.name}, {"set_level", x.set_level}};
    if (x.probe_residual) entry["probe_residual"] = *x.probe_residual;
    entry["failing_ids"] = x.failing_ids;
    entry["pass"] = x.pass;
    rel.push_back(std::move(entry));
  }
  return {{"pass", r.pass}, {"trials", r.trials}, {"tol", r.tol}, {"relations", std::move(rel)}};
}

Json complex_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

Json to_json(const DualityResult& r) {
  return {{"lhs", complex_json(r.lhs)},
          {"rhs", complex_json(r.rhs)},
          {"rhs_quadrature", complex_json(r.rhs_quadrature)},
          {"gap", r.gap},
          {"oracle_agrees", r.oracle_agrees},
          {"pass", r.pass}};
}

}  // namespace branchsys
