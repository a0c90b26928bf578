#pragma once

#include "branchsys/interval_set.hpp"
#include "branchsys/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace branchsys {

/// x -> slope * x + offset restricted to a half-open source interval.
struct AffinePiece {
  Interval src;
  Rational slope;
  Rational offset;

  AffinePiece(Interval src_, Rational slope_, Rational offset_);

  Rational apply(const Rational& x) const { return slope * x + offset; }
  /// Image of src, as a half-open interval (a.e. equal to the true image).
  Interval image() const;
  /// Image of a sub-interval of src.
  Interval image_of(const Interval& sub) const;

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

/// Piecewise-affine map between interval sets. The Radon-Nikodym derivative
/// of mu o f on a piece is |slope|.
class PAMap {
 public:
  PAMap() = default;
  /// Sorts pieces by source and merges source-adjacent pieces carrying the
  /// same affine formula. Overlaps are kept; see injectivity_defect().
  explicit PAMap(std::vector<AffinePiece> pieces);

  const std::vector<AffinePiece>& pieces() const& { return pieces_; }
  std::vector<AffinePiece> pieces() && { return std::move(pieces_); }
  IntervalSet domain() const;
  IntervalSet image() const;

  /// Throws std::domain_error when x is outside the domain.
  Rational apply(const Rational& x) const;
  Rational rn(const Rational& x) const;
  const AffinePiece& piece_at(const Rational& x) const;

  /// Inverse map (slope 1/a, offset -b/a on each image piece).
  PAMap inverse() const;

  /// f(A ∩ domain).
  IntervalSet image_of(const IntervalSet& a) const;

  /// Description of overlapping sources or images, if any; empty when the
  /// map is injective a.e.
  std::optional<std::string> injectivity_defect() const;

  friend bool operator==(const PAMap&, const PAMap&) = default;

 private:
  std::vector<AffinePiece> pieces_;
};

/// Orientation-preserving affine bijection from `from` onto `to`.
AffinePiece affine_onto(const Interval& from, const Interval& to);

}  // namespace branchsys
