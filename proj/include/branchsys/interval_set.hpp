#pragma once

#include "branchsys/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace branchsys {

/// Half-open interval [lo, hi) with lo < hi.
struct Interval {
  Rational lo;
  Rational hi;

  Interval(Rational lo_, Rational hi_);

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x < hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of half-open intervals in canonical form: sorted, pairwise
/// disjoint and non-adjacent. Two sets that agree up to a null set have the
/// same canonical form, so a.e. relations reduce to exact comparisons.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(const Interval& iv) : parts_{iv} {}
  IntervalSet(std::initializer_list<Interval> parts);
  explicit IntervalSet(std::vector<Interval> parts);

  const std::vector<Interval>& parts() const& { return parts_; }
  std::vector<Interval> parts() && { return std::move(parts_); }
  bool empty() const { return parts_.empty(); }
  Rational measure() const;
  bool contains(const Rational& x) const;

  /// Smallest interval covering the set. Requires !empty().
  Interval hull() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet subtract(const IntervalSet& other) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

/// mu(A \ B) == 0.
bool ae_subset(const IntervalSet& a, const IntervalSet& b);
/// Both inclusions hold a.e.; on canonical forms this is plain equality.
bool ae_equal(const IntervalSet& a, const IntervalSet& b);
bool ae_disjoint(const IntervalSet& a, const IntervalSet& b);

std::string to_string(const IntervalSet& s);

}  // namespace branchsys
