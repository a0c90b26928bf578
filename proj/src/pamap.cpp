#include "branchsys/pamap.hpp"

#include <algorithm>
#include <stdexcept>

namespace branchsys {

AffinePiece::AffinePiece(Interval src_, Rational slope_, Rational offset_)
    : src(std::move(src_)), slope(std::move(slope_)), offset(std::move(offset_)) {
  if (slope == 0) throw std::invalid_argument("affine piece with zero slope");
}

Interval AffinePiece::image() const { return image_of(src); }

Interval AffinePiece::image_of(const Interval& sub) const {
  Rational a = apply(sub.lo);
  Rational b = apply(sub.hi);
  if (slope > 0) return Interval(std::move(a), std::move(b));
  return Interval(std::move(b), std::move(a));
}

PAMap::PAMap(std::vector<AffinePiece> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const AffinePiece& x, const AffinePiece& y) { return x.src.lo < y.src.lo; });
  for (auto& p : pieces) {
    if (!pieces_.empty()) {
      auto& last = pieces_.back();
      if (last.src.hi == p.src.lo && last.slope == p.slope && last.offset == p.offset) {
        last.src.hi = p.src.hi;
        continue;
      }
    }
    pieces_.push_back(std::move(p));
  }
}

IntervalSet PAMap::domain() const {
  std::vector<Interval> parts;
  for (const auto& p : pieces_) parts.push_back(p.src);
  return IntervalSet(std::move(parts));
}

IntervalSet PAMap::image() const {
  std::vector<Interval> parts;
  for (const auto& p : pieces_) parts.push_back(p.image());
  return IntervalSet(std::move(parts));
}

const AffinePiece& PAMap::piece_at(const Rational& x) const {
  for (const auto& p : pieces_) {
    if (p.src.contains(x)) return p;
  }
  throw std::domain_error("point " + format_rational(x) + " outside map domain " +
                          to_string(domain()));
}

Rational PAMap::apply(const Rational& x) const { return piece_at(x).apply(x); }

Rational PAMap::rn(const Rational& x) const { return abs(piece_at(x).slope); }

PAMap PAMap::inverse() const {
  std::vector<AffinePiece> inv;
  inv.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    inv.emplace_back(p.image(), Rational(1 / p.slope), Rational(-p.offset / p.slope));
  }
  return PAMap(std::move(inv));
}

IntervalSet PAMap::image_of(const IntervalSet& a) const {
  std::vector<Interval> parts;
  for (const auto& p : pieces_) {
    for (const auto& iv : a.intersect(p.src).parts()) parts.push_back(p.image_of(iv));
  }
  return IntervalSet(std::move(parts));
}

std::optional<std::string> PAMap::injectivity_defect() const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      const IntervalSet si(pieces_[i].src), sj(pieces_[j].src);
      if (!ae_disjoint(si, sj)) {
        return "overlapping sources " + to_string(si.intersect(sj));
      }
      const IntervalSet ii(pieces_[i].image()), ij(pieces_[j].image());
      if (!ae_disjoint(ii, ij)) {
        return "overlapping images " + to_string(ii.intersect(ij));
      }
    }
  }
  return std::nullopt;
}

AffinePiece affine_onto(const Interval& from, const Interval& to) {
  Rational slope = to.length() / from.length();
  Rational offset = to.lo - slope * from.lo;
  return AffinePiece(from, std::move(slope), std::move(offset));
}

}  // namespace branchsys
