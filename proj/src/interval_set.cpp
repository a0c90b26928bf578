#include "branchsys/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace branchsys {

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!(lo < hi)) {
    throw std::invalid_argument("empty interval [" + format_rational(lo) + ", " +
                                format_rational(hi) + ")");
  }
}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts)
    : IntervalSet(std::vector<Interval>(parts)) {}

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (auto& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      if (iv.hi > parts_.back().hi) parts_.back().hi = iv.hi;
    } else {
      parts_.push_back(std::move(iv));
    }
  }
}

Rational IntervalSet::measure() const {
  Rational total = 0;
  for (const auto& iv : parts_) total += iv.length();
  return total;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

Interval IntervalSet::hull() const {
  if (parts_.empty()) throw std::logic_error("hull of empty interval set");
  return Interval(parts_.front().lo, parts_.back().hi);
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const auto& a = parts_[i];
    const auto& b = other.parts_[j];
    const Rational& lo = a.lo < b.lo ? b.lo : a.lo;
    const Rational& hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo < hi) out.emplace_back(lo, hi);
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t j = 0;
  for (const auto& a : parts_) {
    Rational cursor = a.lo;
    while (j < other.parts_.size() && other.parts_[j].hi <= cursor) ++j;
    std::size_t k = j;
    while (k < other.parts_.size() && other.parts_[k].lo < a.hi) {
      const auto& b = other.parts_[k];
      if (cursor < b.lo) out.emplace_back(cursor, b.lo);
      if (b.hi > cursor) cursor = b.hi;
      if (cursor >= a.hi) break;
      ++k;
    }
    if (cursor < a.hi) out.emplace_back(cursor, a.hi);
  }
  return IntervalSet(std::move(out));
}

bool ae_subset(const IntervalSet& a, const IntervalSet& b) { return a.subtract(b).empty(); }

bool ae_equal(const IntervalSet& a, const IntervalSet& b) { return a == b; }

bool ae_disjoint(const IntervalSet& a, const IntervalSet& b) {
  return a.intersect(b).empty();
}

std::string to_string(const IntervalSet& s) {
  if (s.empty()) return "{}";
  std::string out;
  for (const auto& iv : s.parts()) {
    if (!out.empty()) out += " u ";
    out += "[" + format_rational(iv.lo) + ", " + format_rational(iv.hi) + ")";
  }
  return out;
}

}  // namespace branchsys
