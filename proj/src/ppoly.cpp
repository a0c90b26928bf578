#include "branchsys/ppoly.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace branchsys {

namespace {

using Coeffs = std::vector<Complex>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
}

Coeffs add(const Coeffs& a, const Coeffs& b, double sign = 1.0) {
  Coeffs out(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += sign * b[k];
  trim(out);
  return out;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  const int degree = static_cast<int>(a.size() + b.size()) - 2;
  if (degree > PPoly::kMaxDegree) {
    throw DegreeOverflow("product degree " + std::to_string(degree) + " exceeds limit " +
                         std::to_string(PPoly::kMaxDegree));
  }
  Coeffs out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

// p(s * t + shift) as a polynomial in t, by Horner's scheme.
Coeffs compose_linear(const Coeffs& p, double s, double shift) {
  Coeffs out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Coeffs next(out.size() + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
      next[k] += out[k] * shift;
      next[k + 1] += out[k] * s;
    }
    next[0] += *it;
    out = std::move(next);
  }
  trim(out);
  return out;
}

Coeffs shift_origin(const Coeffs& p, const Rational& delta) {
  if (delta == 0) return p;
  return compose_linear(p, 1.0, to_double(delta));
}

Complex horner(const Coeffs& c, double t) {
  Complex v{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

Complex antiderivative_between(const Coeffs& c, double u, double v) {
  Complex fu{}, fv{};
  for (std::size_t k = c.size(); k-- > 0;) {
    const double inv = 1.0 / static_cast<double>(k + 1);
    fu = fu * u + c[k] * inv;
    fv = fv * v + c[k] * inv;
  }
  return fv * v - fu * u;
}

// Cursor over a sorted piece list, answering "which piece covers [p, q)".
class PieceCursor {
 public:
  explicit PieceCursor(const std::vector<PolyPiece>& pieces) : pieces_(pieces) {}
  const PolyPiece* covering(const Rational& p) {
    while (idx_ < pieces_.size() && pieces_[idx_].support.hi <= p) ++idx_;
    if (idx_ < pieces_.size() && pieces_[idx_].support.lo <= p) return &pieces_[idx_];
    return nullptr;
  }

 private:
  const std::vector<PolyPiece>& pieces_;
  std::size_t idx_ = 0;
};

template <class Op>
std::vector<PolyPiece> overlay(const std::vector<PolyPiece>& a, const std::vector<PolyPiece>& b,
                               Op op) {
  std::vector<Rational> cuts;
  cuts.reserve(2 * (a.size() + b.size()));
  for (const auto& p : a) {
    cuts.push_back(p.support.lo);
    cuts.push_back(p.support.hi);
  }
  for (const auto& p : b) {
    cuts.push_back(p.support.lo);
    cuts.push_back(p.support.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<PolyPiece> out;
  PieceCursor ca(a), cb(b);
  static const Coeffs kZero;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& lo = cuts[i];
    const PolyPiece* pa = ca.covering(lo);
    const PolyPiece* pb = cb.covering(lo);
    if (!pa && !pb) continue;
    const Coeffs ka = pa ? shift_origin(pa->coeffs, lo - pa->support.lo) : kZero;
    const Coeffs kb = pb ? shift_origin(pb->coeffs, lo - pb->support.lo) : kZero;
    Coeffs c = op(ka, kb);
    if (!c.empty()) out.push_back({Interval(lo, cuts[i + 1]), std::move(c)});
  }
  return out;
}

double bisect_root(const std::vector<double>& c, double lo, double hi) {
  auto f = [&](double t) {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  };
  const bool lo_negative = f(lo) < 0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) < 0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Complex PolyPiece::eval_local(double t) const { return horner(coeffs, t); }

std::vector<Complex> PolyPiece::global_coeffs() const {
  // p(x - lo) expanded in powers of x.
  return compose_linear(coeffs, 1.0, -to_double(support.lo));
}

PPoly PPoly::canonical(std::vector<PolyPiece> sorted_disjoint) {
  PPoly out;
  for (auto& p : sorted_disjoint) {
    trim(p.coeffs);
    if (p.coeffs.empty()) continue;
    if (!out.pieces_.empty()) {
      auto& last = out.pieces_.back();
      if (last.support.hi == p.support.lo &&
          shift_origin(last.coeffs, p.support.lo - last.support.lo) == p.coeffs) {
        last.support.hi = p.support.hi;
        continue;
      }
    }
    out.pieces_.push_back(std::move(p));
  }
  return out;
}

PPoly PPoly::from_pieces(std::vector<PolyPiece> pieces) {
  PPoly acc;
  for (auto& p : pieces) {
    if (static_cast<int>(p.coeffs.size()) - 1 > kMaxDegree) {
      throw DegreeOverflow("piece degree exceeds limit " + std::to_string(kMaxDegree));
    }
    PPoly single;
    single.pieces_.push_back(std::move(p));
    acc = acc + single;
  }
  return acc;
}

PPoly PPoly::from_global(const Interval& support, const std::vector<Complex>& coeffs) {
  if (static_cast<int>(coeffs.size()) - 1 > kMaxDegree) {
    throw DegreeOverflow("piece degree exceeds limit " + std::to_string(kMaxDegree));
  }
  return canonical({PolyPiece{support, compose_linear(coeffs, 1.0, to_double(support.lo))}});
}

PPoly PPoly::constant(const IntervalSet& support, Complex value) {
  std::vector<PolyPiece> pieces;
  for (const auto& iv : support.parts()) pieces.push_back({iv, {value}});
  return canonical(std::move(pieces));
}

bool PPoly::is_real() const {
  for (const auto& p : pieces_) {
    for (const auto& c : p.coeffs) {
      if (c.imag() != 0.0) return false;
    }
  }
  return true;
}

int PPoly::degree() const {
  int d = -1;
  for (const auto& p : pieces_) d = std::max(d, static_cast<int>(p.coeffs.size()) - 1);
  return d;
}

IntervalSet PPoly::support() const {
  std::vector<Interval> parts;
  for (const auto& p : pieces_) parts.push_back(p.support);
  return IntervalSet(std::move(parts));
}

Complex PPoly::eval(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const PolyPiece& p) { return v < p.support.lo; });
  if (it == pieces_.begin()) return {};
  const auto& p = *std::prev(it);
  if (!p.support.contains(x)) return {};
  return p.eval_local(to_double(x - p.support.lo));
}

Complex PPoly::eval(double x) const {
  auto it = std::upper_bound(
      pieces_.begin(), pieces_.end(), x,
      [](double v, const PolyPiece& p) { return v < to_double(p.support.lo); });
  if (it == pieces_.begin()) return {};
  const auto& p = *std::prev(it);
  const double lo = to_double(p.support.lo);
  if (x >= to_double(p.support.hi)) return {};
  return p.eval_local(x - lo);
}

PPoly PPoly::operator+(const PPoly& o) const {
  return canonical(overlay(pieces_, o.pieces_, [](const Coeffs& a, const Coeffs& b) {
    return add(a, b);
  }));
}

PPoly PPoly::operator-(const PPoly& o) const {
  return canonical(overlay(pieces_, o.pieces_, [](const Coeffs& a, const Coeffs& b) {
    return add(a, b, -1.0);
  }));
}

PPoly PPoly::operator*(const PPoly& o) const {
  return canonical(overlay(pieces_, o.pieces_, [](const Coeffs& a, const Coeffs& b) {
    return multiply(a, b);
  }));
}

PPoly PPoly::scaled(Complex c) const {
  std::vector<PolyPiece> out = pieces_;
  for (auto& p : out) {
    for (auto& k : p.coeffs) k *= c;
  }
  return canonical(std::move(out));
}

PPoly PPoly::restrict_to(const IntervalSet& s) const {
  std::vector<PolyPiece> out;
  for (const auto& p : pieces_) {
    for (const auto& iv : s.intersect(p.support).parts()) {
      out.push_back({iv, shift_origin(p.coeffs, iv.lo - p.support.lo)});
    }
  }
  return canonical(std::move(out));
}

PPoly PPoly::compose_affine(const Rational& slope, const Rational& offset) const {
  if (slope == 0) throw std::invalid_argument("compose_affine with zero slope");
  std::vector<PolyPiece> out;
  out.reserve(pieces_.size());
  const double s = to_double(slope);
  for (const auto& p : pieces_) {
    const Rational a = (p.support.lo - offset) / slope;
    const Rational b = (p.support.hi - offset) / slope;
    if (slope > 0) {
      out.push_back({Interval(a, b), compose_linear(p.coeffs, s, 0.0)});
    } else {
      out.push_back({Interval(b, a), compose_linear(p.coeffs, s, to_double(p.support.length()))});
    }
  }
  if (slope < 0) std::reverse(out.begin(), out.end());
  return canonical(std::move(out));
}

PPoly PPoly::conj() const {
  std::vector<PolyPiece> out = pieces_;
  for (auto& p : out) {
    for (auto& k : p.coeffs) k = std::conj(k);
  }
  return canonical(std::move(out));
}

PPoly PPoly::real_part() const {
  std::vector<PolyPiece> out = pieces_;
  for (auto& p : out) {
    for (auto& k : p.coeffs) k = k.real();
  }
  return canonical(std::move(out));
}

PPoly PPoly::imag_part() const {
  std::vector<PolyPiece> out = pieces_;
  for (auto& p : out) {
    for (auto& k : p.coeffs) k = k.imag();
  }
  return canonical(std::move(out));
}

Complex integrate(const PPoly& f) {
  Complex total{};
  for (const auto& p : f.pieces()) {
    total += antiderivative_between(p.coeffs, 0.0, to_double(p.support.length()));
  }
  return total;
}

Complex integrate(const PPoly& f, const IntervalSet& a) {
  Complex total{};
  for (const auto& p : f.pieces()) {
    for (const auto& iv : a.intersect(p.support).parts()) {
      total += antiderivative_between(p.coeffs, to_double(iv.lo - p.support.lo),
                                      to_double(iv.hi - p.support.lo));
    }
  }
  return total;
}

Complex inner_product(const PPoly& f, const PPoly& g) { return integrate(f * g.conj()); }

double norm2(const PPoly& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

std::vector<double> real_roots(const std::vector<double>& coeffs, double length) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  std::vector<double> deriv(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) deriv[k - 1] = c[k] * static_cast<double>(k);

  // Between consecutive critical points the polynomial is monotone, so each
  // segment holds at most one sign change.
  std::vector<double> marks{0.0};
  for (double r : real_roots(deriv, length)) marks.push_back(r);
  marks.push_back(length);

  auto f = [&](double t) {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  };
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const double a = marks[i], b = marks[i + 1];
    if (!(a < b)) continue;
    const double fa = f(a), fb = f(b);
    if (fa == 0.0) {
      if (i > 0) roots.push_back(a);
    } else if (fb != 0.0 && (fa < 0) != (fb < 0)) {
      roots.push_back(bisect_root(c, a, b));
    }
  }
  return roots;
}

double norm1(const PPoly& f) {
  double total = 0.0;
  const bool real = f.is_real();
  for (const auto& p : f.pieces()) {
    const double length = to_double(p.support.length());
    if (real) {
      std::vector<double> c;
      for (const auto& k : p.coeffs) c.push_back(k.real());
      std::vector<double> marks{0.0};
      for (double r : real_roots(c, length)) marks.push_back(r);
      marks.push_back(length);
      for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        total += std::abs(antiderivative_between(p.coeffs, marks[i], marks[i + 1]).real());
      }
    } else {
      double err = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          [&](double t) { return std::abs(p.eval_local(t)); }, 0.0, length, 15, 1e-12, &err);
    }
  }
  return total;
}

}  // namespace branchsys
