#pragma once

#include "branchsys/interval_set.hpp"
#include "branchsys/rational.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace branchsys {

using Complex = std::complex<double>;

/// Raised when a product would exceed PPoly::kMaxDegree.
class DegreeOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One polynomial piece. Coefficients are stored relative to the left end
/// of the support, value(x) = sum_k coeffs[k] * (x - support.lo)^k, which
/// keeps products and compositions well conditioned far from the origin.
struct PolyPiece {
  Interval support;
  std::vector<Complex> coeffs;

  Complex eval_local(double t) const;
  /// Coefficients in powers of x itself.
  std::vector<Complex> global_coeffs() const;
};

/// Complex-valued piecewise polynomial with compact support. Pieces are kept
/// sorted and disjoint; identically-zero pieces are dropped and adjacent
/// pieces describing the same polynomial are merged.
class PPoly {
 public:
  static constexpr int kMaxDegree = 16;

  PPoly() = default;

  /// Pieces may overlap; overlapping contributions are summed.
  static PPoly from_pieces(std::vector<PolyPiece> pieces);
  /// Piece given by its coefficients in powers of x.
  static PPoly from_global(const Interval& support, const std::vector<Complex>& coeffs);
  static PPoly constant(const IntervalSet& support, Complex value);

  const std::vector<PolyPiece>& pieces() const& { return pieces_; }
  std::vector<PolyPiece> pieces() && { return std::move(pieces_); }
  bool is_zero() const { return pieces_.empty(); }
  bool is_real() const;
  int degree() const;
  IntervalSet support() const;

  Complex eval(const Rational& x) const;
  Complex eval(double x) const;

  PPoly operator+(const PPoly& o) const;
  PPoly operator-(const PPoly& o) const;
  PPoly operator*(const PPoly& o) const;
  PPoly scaled(Complex c) const;
  PPoly restrict_to(const IntervalSet& s) const;
  /// x -> phi(slope * x + offset); support becomes the preimage.
  PPoly compose_affine(const Rational& slope, const Rational& offset) const;
  PPoly square() const { return *this * *this; }
  PPoly conj() const;
  PPoly real_part() const;
  PPoly imag_part() const;

 private:
  std::vector<PolyPiece> pieces_;

  static PPoly canonical(std::vector<PolyPiece> sorted_disjoint);
};

Complex integrate(const PPoly& f);
Complex integrate(const PPoly& f, const IntervalSet& a);
/// Integral of f * conj(g).
Complex inner_product(const PPoly& f, const PPoly& g);
double norm2(const PPoly& f);
/// L1 norm. Real functions use exact sign decomposition by root isolation;
/// complex ones use adaptive Gauss-Kronrod quadrature per piece.
double norm1(const PPoly& f);

/// Real roots of a real local polynomial inside [0, length], found by
/// recursive derivative splitting and bisection.
std::vector<double> real_roots(const std::vector<double>& coeffs, double length);

}  // namespace branchsys
