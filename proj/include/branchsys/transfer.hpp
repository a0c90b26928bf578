#pragma once

#include "branchsys/branching.hpp"
#include "branchsys/graph.hpp"
#include "branchsys/ppoly.hpp"

#include <cstddef>
#include <vector>

namespace branchsys {

/// Perron-Frobenius operator of the nonsingular map F:
///   P_F(psi)(x) = sum_{e : x in D_r(e)} Phi_{f_e}(x) psi(f_e(x)) + 1_Y(x) psi(x).
class TransferOperator {
 public:
  explicit TransferOperator(NonsingularSystem ns) : ns_(std::move(ns)) {}

  const NonsingularSystem& system() const { return ns_; }

  /// Throws InputError when supp(psi) is not inside X.
  PPoly apply(const PPoly& psi) const;

 private:
  NonsingularSystem ns_;
};

inline PPoly apply_PF(const TransferOperator& t, const PPoly& psi) { return t.apply(psi); }

struct DualityResult {
  Complex lhs;             // integral of P_F psi over A
  Complex rhs;             // integral of psi over F^-1(A), exact antiderivatives
  Complex rhs_quadrature;  // same integral by composite Simpson
  double gap = 0.0;        // |lhs - rhs|
  bool oracle_agrees = true;
  bool pass = true;
};

/// Agreement required between the closed-form right side and its Simpson
/// recomputation.
inline constexpr double kQuadratureAgreement = 1e-7;
inline constexpr int kSimpsonPanels = 1 << 14;

DualityResult verify_duality(const TransferOperator& t, const PPoly& psi, const IntervalSet& a,
                             double tol);

/// phi violates supp(phi) ⊆ U R_e.
class HypothesisViolation : public InputError {
 public:
  using InputError::InputError;
};

struct Thm44Result {
  PPoly lhs;  // P_F(phi^2)
  PPoly rhs;  // sum_e (S_e^* phi)^2
  double l1_gap = 0.0;
  bool pass = true;
};

/// Compares P_F(phi^2) with the sum of squared adjoint images of phi.
Thm44Result verify_square_identity(const TransferOperator& t, const PPoly& phi, double tol);

struct Trajectory {
  std::vector<PPoly> states;
  std::vector<double> mass;    // Re of the integral over X
  std::vector<double> y_mass;  // Re of the integral over Y
};

inline constexpr std::size_t kMaxTrajectoryPieces = 1'000'000;

Trajectory iterate_PF(const TransferOperator& t, const PPoly& psi0, int steps);

/// Normalized indicator of the union of the R's.
PPoly default_initial_density(const NonsingularSystem& ns);

/// L1 distances ||P_F(h) - P_F(h_N)|| for N = 0..|E|, where h_N keeps h on
/// the first N range sets (edges in id order).
std::vector<double> truncation_gaps(const TransferOperator& t, const PPoly& h);

/// Composite Simpson rule over `a`, split at the pieces of f, with `panels`
/// panels per sub-interval. Evaluates f pointwise only.
Complex simpson_integrate(const PPoly& f, const IntervalSet& a, int panels = kSimpsonPanels);

}  // namespace branchsys
