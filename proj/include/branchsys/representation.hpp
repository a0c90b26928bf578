#pragma once

#include "branchsys/branching.hpp"
#include "branchsys/ppoly.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace branchsys {

enum class GeneratorKind { EdgeIso, EdgeIsoAdj, VertexProj };

struct Generator {
  GeneratorKind kind;
  std::string id;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Product of generators, applied rightmost first.
struct OperatorWord {
  std::vector<Generator> factors;
};

/// Whitespace-separated tokens S_<edge>, S_<edge>*, P_<vertex>.
OperatorWord parse_word(std::string_view text);
std::string to_string(const OperatorWord& w);

/// pi(P_v): multiplication by the indicator of D_v.
PPoly apply_P(const BranchingSystem& bs, std::string_view vertex, const PPoly& phi);
/// pi(S_e): sqrt(Phi_{f_e^-1}) * phi o f_e^-1 on R_e, zero elsewhere.
PPoly apply_S(const BranchingSystem& bs, std::string_view edge, const PPoly& phi);
/// pi(S_e)^*: sqrt(Phi_{f_e}) * phi o f_e on D_{r(e)}, zero elsewhere.
PPoly apply_S_star(const BranchingSystem& bs, std::string_view edge, const PPoly& phi);
PPoly apply_word(const BranchingSystem& bs, const OperatorWord& w, const PPoly& phi);

struct RelationResult {
  std::string name;
  bool set_level = true;
  std::vector<std::string> failing_ids;  // set-level failures
  std::optional<double> probe_residual;  // max L2 residual; absent when trials == 0
  bool pass = true;
};

struct RelationReport {
  std::vector<RelationResult> relations;
  int trials = 0;
  double tol = 0.0;
  bool pass = true;
};

struct RelationOptions {
  int trials = 20;
  int degree = 3;
  double tol = 1e-9;
  std::uint64_t seed = 42;
};

/// Checks the four generator relations both exactly on the interval data
/// and numerically on seeded random probe functions. Throws InvalidSystem
/// when some f_e is not an invertible map of D_{r(e)} onto R_e, since the
/// operators are then not partial isometries at all.
RelationReport verify_relations(const BranchingSystem& bs, const RelationOptions& opts = {});

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);
/// Uniform integer in [lo, hi].
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);
/// Random generator for one (seed, index) stream.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Random piecewise polynomial supported in `support`: breakpoints at
/// rationals with denominator <= 64 relative to each part, per-piece degree
/// up to `max_degree`, coefficients uniform in [-1,1] + i[-1,1] (imaginary
/// parts zero when `real_only`).
PPoly random_probe(std::mt19937_64& rng, const IntervalSet& support, int max_degree,
                   bool real_only = false);

}  // namespace branchsys
