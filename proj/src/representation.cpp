#include "branchsys/representation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace branchsys {

namespace {

std::size_t edge_of(const BranchingSystem& bs, std::string_view edge) {
  const auto e = bs.graph.edge_index(edge);
  if (!e) throw InputError("unknown edge " + std::string(edge));
  return *e;
}

PPoly apply_S_index(const BranchingSystem& bs, std::size_t e, const PPoly& phi) {
  PPoly out;
  for (const auto& piece : bs.f[e].pieces()) {
    const Rational inv_slope = 1 / piece.slope;
    const PPoly part = phi.restrict_to(IntervalSet(piece.src))
                           .compose_affine(inv_slope, Rational(-piece.offset * inv_slope));
    out = out + part.scaled(1.0 / std::sqrt(to_double(abs(piece.slope))));
  }
  return out;
}

PPoly apply_S_star_index(const BranchingSystem& bs, std::size_t e, const PPoly& phi) {
  PPoly out;
  for (const auto& piece : bs.f[e].pieces()) {
    const PPoly part =
        phi.restrict_to(IntervalSet(piece.image())).compose_affine(piece.slope, piece.offset);
    out = out + part.scaled(std::sqrt(to_double(abs(piece.slope))));
  }
  return out;
}

PPoly project(const BranchingSystem& bs, std::size_t v, const PPoly& phi) {
  return phi.restrict_to(bs.D[v]);
}

}  // namespace

OperatorWord parse_word(std::string_view text) {
  OperatorWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() >= 3 && tok.rfind("S_", 0) == 0 && tok.back() == '*') {
      w.factors.push_back({GeneratorKind::EdgeIsoAdj, tok.substr(2, tok.size() - 3)});
    } else if (tok.size() >= 3 && tok.rfind("S_", 0) == 0) {
      w.factors.push_back({GeneratorKind::EdgeIso, tok.substr(2)});
    } else if (tok.size() >= 3 && tok.rfind("P_", 0) == 0) {
      w.factors.push_back({GeneratorKind::VertexProj, tok.substr(2)});
    } else {
      throw InputError("bad generator token '" + tok + "'");
    }
  }
  if (w.factors.empty()) throw InputError("empty operator word");
  return w;
}

std::string to_string(const OperatorWord& w) {
  std::string out;
  for (const auto& g : w.factors) {
    if (!out.empty()) out += ' ';
    switch (g.kind) {
      case GeneratorKind::EdgeIso:
        out += "S_" + g.id;
        break;
      case GeneratorKind::EdgeIsoAdj:
        out += "S_" + g.id + "*";
        break;
      case GeneratorKind::VertexProj:
        out += "P_" + g.id;
        break;
    }
  }
  return out;
}

PPoly apply_P(const BranchingSystem& bs, std::string_view vertex, const PPoly& phi) {
  return phi.restrict_to(bs.domain_set(vertex));
}

PPoly apply_S(const BranchingSystem& bs, std::string_view edge, const PPoly& phi) {
  return apply_S_index(bs, edge_of(bs, edge), phi);
}

PPoly apply_S_star(const BranchingSystem& bs, std::string_view edge, const PPoly& phi) {
  return apply_S_star_index(bs, edge_of(bs, edge), phi);
}

PPoly apply_word(const BranchingSystem& bs, const OperatorWord& w, const PPoly& phi) {
  if (w.factors.empty()) throw InputError("empty operator word");
  for (const auto& g : w.factors) {
    const bool known = g.kind == GeneratorKind::VertexProj ? bs.graph.vertex_index(g.id).has_value()
                                                           : bs.graph.edge_index(g.id).has_value();
    if (!known) {
      throw InputError(std::string(g.kind == GeneratorKind::VertexProj ? "unknown vertex "
                                                                       : "unknown edge ") +
                       g.id);
    }
  }
  PPoly out = phi;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    switch (it->kind) {
      case GeneratorKind::EdgeIso:
        out = apply_S(bs, it->id, out);
        break;
      case GeneratorKind::EdgeIsoAdj:
        out = apply_S_star(bs, it->id, out);
        break;
      case GeneratorKind::VertexProj:
        out = apply_P(bs, it->id, out);
        break;
    }
  }
  return out;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

PPoly random_probe(std::mt19937_64& rng, const IntervalSet& support, int max_degree,
                   bool real_only) {
  std::vector<PolyPiece> pieces;
  for (const auto& part : support.parts()) {
    std::vector<Rational> cuts{part.lo, part.hi};
    const auto breaks = uniform_int(rng, 0, 3);
    for (std::int64_t k = 0; k < breaks; ++k) {
      const auto den = uniform_int(rng, 2, 64);
      const auto num = uniform_int(rng, 1, den - 1);
      cuts.push_back(part.lo + part.length() * Rational(num, den));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (uniform_int(rng, 0, 7) == 0) continue;  // leave a gap in the support
      const auto degree = uniform_int(rng, 0, max_degree);
      std::vector<Complex> c;
      for (std::int64_t k = 0; k <= degree; ++k) {
        const double re = 2 * uniform01(rng) - 1;
        const double im = 2 * uniform01(rng) - 1;
        c.emplace_back(re, real_only ? 0.0 : im);
      }
      pieces.push_back({Interval(cuts[i], cuts[i + 1]), std::move(c)});
    }
  }
  return PPoly::from_pieces(std::move(pieces));
}

RelationReport verify_relations(const BranchingSystem& bs, const RelationOptions& opts) {
  std::vector<Violation> map_defects;
  for (auto& v : validate(bs)) {
    if (v.item == Condition::MapOntoRange || v.item == Condition::MapInvertible) {
      map_defects.push_back(std::move(v));
    }
  }
  if (!map_defects.empty()) throw InvalidSystem(std::move(map_defects));

  const auto& g = bs.graph;
  const std::size_t nv = g.vertices().size();
  const std::size_t ne = g.edges().size();

  RelationResult orth;
  orth.name = "projections-orthogonal";
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t v = u + 1; v < nv; ++v) {
      if (!ae_disjoint(bs.D[u], bs.D[v])) {
        orth.set_level = false;
        orth.failing_ids.push_back(g.vertices()[u] + "," + g.vertices()[v]);
      }
    }
  }
  RelationResult source;
  source.name = "adjoint-product-is-range-projection";
  RelationResult below;
  below.name = "product-below-source-projection";
  for (std::size_t e = 0; e < ne; ++e) {
    if (!ae_equal(bs.f[e].domain(), bs.target_domain(e))) {
      source.set_level = false;
      source.failing_ids.push_back(g.edges()[e].id);
    }
    if (!ae_subset(bs.R[e], bs.D[g.src_index(e)])) {
      below.set_level = false;
      below.failing_ids.push_back(g.edges()[e].id);
    }
  }
  RelationResult sum;
  sum.name = "summation";
  for (std::size_t v = 0; v < nv; ++v) {
    if (g.out_edges(v).empty()) continue;
    IntervalSet ranges;
    for (std::size_t e : g.out_edges(v)) ranges = ranges.unite(bs.R[e]);
    if (!ae_equal(bs.D[v], ranges)) {
      sum.set_level = false;
      sum.failing_ids.push_back(g.vertices()[v]);
    }
  }

  if (opts.trials > 0) {
    double r_orth = 0, r_source = 0, r_below = 0, r_sum = 0;
    for (int t = 0; t < opts.trials; ++t) {
      auto rng = trial_rng(opts.seed, static_cast<std::uint64_t>(t));
      const PPoly phi = random_probe(rng, bs.X, opts.degree);
      std::vector<PPoly> projected(nv);
      for (std::size_t v = 0; v < nv; ++v) projected[v] = project(bs, v, phi);
      for (std::size_t u = 0; u < nv; ++u) {
        for (std::size_t v = u + 1; v < nv; ++v) {
          r_orth = std::max(r_orth, norm2(project(bs, u, projected[v])));
        }
      }
      std::vector<PPoly> range_part(ne);
      for (std::size_t e = 0; e < ne; ++e) {
        const PPoly ss = apply_S_star_index(bs, e, apply_S_index(bs, e, phi));
        r_source = std::max(r_source, norm2(ss - projected[g.dst_index(e)]));
        range_part[e] = apply_S_index(bs, e, apply_S_star_index(bs, e, phi));
        r_below = std::max(
            r_below, norm2(project(bs, g.src_index(e), range_part[e]) - range_part[e]));
      }
      for (std::size_t v = 0; v < nv; ++v) {
        if (g.out_edges(v).empty()) continue;
        PPoly total;
        for (std::size_t e : g.out_edges(v)) total = total + range_part[e];
        r_sum = std::max(r_sum, norm2(total - projected[v]));
      }
    }
    orth.probe_residual = r_orth;
    source.probe_residual = r_source;
    below.probe_residual = r_below;
    sum.probe_residual = r_sum;
  }

  RelationReport report;
  report.trials = opts.trials;
  report.tol = opts.tol;
  for (auto* r : {&orth, &source, &below, &sum}) {
    r->pass = r->set_level && (!r->probe_residual || *r->probe_residual <= opts.tol);
    report.pass = report.pass && r->pass;
    report.relations.push_back(std::move(*r));
  }
  return report;
}

}  // namespace branchsys
