#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code paths it is used to check.

#include "branchsys/branching.hpp"
#include "branchsys/condition_k.hpp"
#include "branchsys/graph.hpp"
#include "branchsys/ppoly.hpp"
#include "branchsys/representation.hpp"

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace branchsys::oracle {

enum class KVerdict { NoLoop, Pass, Violation };

/// Breadth-first enumeration of every return path at `v` (revisits of v
/// allowed) with length <= 2|E|, testing the prefix condition pairwise.
/// Walks that can no longer reach v are dropped, which loses no return path.
inline KVerdict brute_force_K(const DirectedGraph& g, std::size_t v) {
  const std::size_t n = g.vertices().size();
  const std::size_t max_len = 2 * g.edges().size();
  std::vector<bool> reach(n, false);
  reach[v] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      if (reach[g.dst_index(e)] && !reach[g.src_index(e)]) {
        reach[g.src_index(e)] = true;
        changed = true;
      }
    }
  }
  struct Walk {
    std::vector<std::size_t> edges;
    std::size_t at;
  };
  std::vector<std::vector<std::size_t>> returns;
  std::vector<Walk> frontier{{{}, v}};
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Walk> next;
    for (const auto& w : frontier) {
      for (std::size_t e = 0; e < g.edges().size(); ++e) {
        if (g.src_index(e) != w.at || !reach[g.dst_index(e)]) continue;
        Walk x{w.edges, g.dst_index(e)};
        x.edges.push_back(e);
        if (x.at == v) {
          for (const auto& r : returns) {
            const bool r_prefix = std::equal(r.begin(), r.end(), x.edges.begin());
            if (!r_prefix) return KVerdict::Pass;  // r is shorter, x can't be its prefix
          }
          returns.push_back(x.edges);
        }
        next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  return returns.empty() ? KVerdict::NoLoop : KVerdict::Violation;
}

/// All walks from v of length <= |E| that do not pass through v before
/// their last edge, ending at v.
inline std::vector<EdgePath> exhaustive_first_returns(const DirectedGraph& g, std::size_t v) {
  std::vector<EdgePath> out;
  std::vector<std::size_t> stack;
  auto rec = [&](auto& self, std::size_t at) -> void {
    if (stack.size() >= g.edges().size()) return;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      if (g.src_index(e) != at) continue;
      stack.push_back(e);
      if (g.dst_index(e) == v) {
        EdgePath p;
        for (auto k : stack) p.push_back(g.edges()[k].id);
        out.push_back(std::move(p));
      } else {
        self(self, g.dst_index(e));
      }
      stack.pop_back();
    }
  };
  rec(rec, v);
  return out;
}

inline DirectedGraph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges,
                                  const std::string& vprefix = "v",
                                  const std::string& eprefix = "e") {
  const auto nv = uniform_int(rng, 1, max_vertices);
  const auto ne = uniform_int(rng, 0, max_edges);
  std::vector<std::string> vs;
  for (std::int64_t i = 0; i < nv; ++i) vs.push_back(vprefix + std::to_string(i));
  std::vector<Edge> es;
  for (std::int64_t i = 0; i < ne; ++i) {
    es.push_back({eprefix + std::to_string(i), vs[uniform_int(rng, 0, nv - 1)],
                  vs[uniform_int(rng, 0, nv - 1)]});
  }
  return DirectedGraph(vs, es);
}

inline Rational random_rational(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto den = uniform_int(rng, 1, 64);
  return Rational(uniform_int(rng, lo * den, hi * den), den);
}

/// Composite Simpson for an arbitrary integrand over [a, b].
template <class F>
double simpson(F f, double a, double b, int panels = 1 << 14) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

/// sum_k |c_k| |t|^k at x, the rounding scale of evaluating f there.
inline double abs_eval(const PPoly& f, const Rational& x) {
  for (const auto& p : f.pieces()) {
    if (!p.support.contains(x)) continue;
    const double t = std::abs(to_double(x - p.support.lo));
    double s = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) s = s * t + std::abs(*it);
    return s;
  }
  return 0;
}

/// L1 norm by Simpson on |f|. Real pieces are first cut at the sign changes
/// found on a uniform grid (refined by bisection) so each integrand is smooth.
inline double simpson_norm1(const PPoly& f) {
  double total = 0;
  for (const auto& p : f.pieces()) {
    auto g = [&](double t) { return std::abs(p.eval_local(t)); };
    const double len = to_double(p.support.length());
    bool real = true;
    for (const auto& c : p.coeffs) real = real && c.imag() == 0;
    if (!real) {
      total += simpson(g, 0.0, len, 1 << 16);
      continue;
    }
    auto v = [&](double t) { return p.eval_local(t).real(); };
    std::vector<double> cuts{0.0};
    const int grid = 1 << 14;
    for (int k = 0; k < grid; ++k) {
      double a = len * k / grid, b = len * (k + 1) / grid;
      if ((v(a) < 0) == (v(b) < 0)) continue;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        ((v(a) < 0) == (v(m) < 0) ? a : b) = m;
      }
      cuts.push_back(0.5 * (a + b));
    }
    cuts.push_back(len);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) total += simpson(g, cuts[k], cuts[k + 1], 1 << 10);
  }
  return total;
}

/// Exact point-membership test of F^{-1}(A): x in the preimage iff F(x) in A,
/// with F evaluated branch by branch from the raw maps.
inline bool in_preimage(const BranchingSystem& bs, const IntervalSet& a, const Rational& x) {
  for (std::size_t e = 0; e < bs.R.size(); ++e) {
    if (!bs.R[e].contains(x)) continue;
    for (const auto& p : bs.f[e].pieces()) {
      if (p.image().contains(x)) return a.contains((x - p.offset) / p.slope);
    }
    return false;
  }
  return bs.X.contains(x) && a.contains(x);
}

/// Renames every vertex and edge id through a fixed permutation-like map.
inline DirectedGraph relabel(const DirectedGraph& g, std::mt19937_64& rng) {
  std::vector<std::string> vs;
  std::map<std::string, std::string> vmap;
  for (const auto& v : g.vertices()) {
    vmap[v] = "n" + std::to_string(uniform_int(rng, 0, 999)) + "_" + v;
    vs.push_back(vmap[v]);
  }
  std::vector<Edge> es;
  for (const auto& e : g.edges()) {
    es.push_back({"x" + std::to_string(uniform_int(rng, 0, 999)) + "_" + e.id, vmap[e.src],
                  vmap[e.dst]});
  }
  return DirectedGraph(vs, es);
}

}  // namespace branchsys::oracle
