#include "branchsys/transfer.hpp"

#include "branchsys/representation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace branchsys {

PPoly TransferOperator::apply(const PPoly& psi) const {
  const IntervalSet outside = psi.support().subtract(ns_.base.X);
  if (!outside.empty()) throw InputError("function support leaves X on " + to_string(outside));
  PPoly out = psi.restrict_to(ns_.Y);
  for (const auto& f : ns_.base.f) {
    for (const auto& piece : f.pieces()) {
      const PPoly branch = psi.restrict_to(IntervalSet(piece.image()))
                               .compose_affine(piece.slope, piece.offset)
                               .scaled(to_double(abs(piece.slope)));
      out = out + branch;
    }
  }
  return out;
}

Complex simpson_integrate(const PPoly& f, const IntervalSet& a, int panels) {
  Complex total{};
  for (const auto& p : f.pieces()) {
    for (const auto& iv : a.intersect(p.support).parts()) {
      const double u = to_double(iv.lo - p.support.lo);
      const double v = to_double(iv.hi - p.support.lo);
      const int n = panels % 2 == 0 ? panels : panels + 1;
      const double h = (v - u) / n;
      Complex s = p.eval_local(u) + p.eval_local(v);
      for (int k = 1; k < n; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * p.eval_local(u + k * h);
      total += s * (h / 3.0);
    }
  }
  return total;
}

DualityResult verify_duality(const TransferOperator& t, const PPoly& psi, const IntervalSet& a,
                             double tol) {
  DualityResult r;
  const IntervalSet pre = preimage_F(t.system(), a);
  r.lhs = integrate(t.apply(psi), a);
  r.rhs = integrate(psi, pre);
  r.rhs_quadrature = simpson_integrate(psi, pre);
  r.gap = std::abs(r.lhs - r.rhs);
  r.oracle_agrees = std::abs(r.rhs - r.rhs_quadrature) <= kQuadratureAgreement;
  r.pass = r.gap <= tol;
  return r;
}

Thm44Result verify_square_identity(const TransferOperator& t, const PPoly& phi, double tol) {
  const auto& bs = t.system().base;
  IntervalSet ranges;
  for (const auto& r : bs.R) ranges = ranges.unite(r);
  const IntervalSet stray = phi.support().subtract(ranges);
  if (!stray.empty()) {
    throw HypothesisViolation("function is not supported on the union of the R sets; mass on " +
                              to_string(stray));
  }
  Thm44Result r;
  r.lhs = t.apply(phi.square());
  for (const auto& e : bs.graph.edges()) r.rhs = r.rhs + apply_S_star(bs, e.id, phi).square();
  r.l1_gap = norm1(r.lhs - r.rhs);
  r.pass = r.l1_gap <= tol;
  return r;
}

Trajectory iterate_PF(const TransferOperator& t, const PPoly& psi0, int steps) {
  if (steps < 0) throw InputError("negative iteration count");
  Trajectory traj;
  PPoly cur = psi0;
  for (int k = 0;; ++k) {
    if (cur.pieces().size() > kMaxTrajectoryPieces) {
      throw std::length_error("trajectory exceeded " + std::to_string(kMaxTrajectoryPieces) +
                              " pieces at step " + std::to_string(k));
    }
    traj.mass.push_back(integrate(cur).real());
    traj.y_mass.push_back(integrate(cur, t.system().Y).real());
    traj.states.push_back(cur);
    if (k == steps) break;
    cur = t.apply(cur);
  }
  return traj;
}

PPoly default_initial_density(const NonsingularSystem& ns) {
  IntervalSet ranges;
  for (const auto& r : ns.base.R) ranges = ranges.unite(r);
  if (ranges.empty()) return {};
  return PPoly::constant(ranges, 1.0 / to_double(ranges.measure()));
}

std::vector<double> truncation_gaps(const TransferOperator& t, const PPoly& h) {
  const auto& bs = t.system().base;
  std::vector<std::size_t> order(bs.graph.edges().size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return bs.graph.edges()[a].id < bs.graph.edges()[b].id; });
  const PPoly full = t.apply(h);
  std::vector<double> gaps;
  IntervalSet kept;
  gaps.push_back(norm1(full - t.apply(h.restrict_to(kept))));
  for (std::size_t e : order) {
    kept = kept.unite(bs.R[e]);
    gaps.push_back(norm1(full - t.apply(h.restrict_to(kept))));
  }
  return gaps;
}

}  // namespace branchsys
