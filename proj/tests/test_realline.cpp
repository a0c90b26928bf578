#include "branchsys/interval_set.hpp"
#include "branchsys/pamap.hpp"
#include "branchsys/ppoly.hpp"
#include "branchsys/rational.hpp"
#include "branchsys/representation.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace branchsys;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p, d); }
IntervalSet iset(long long lo, long long hi) { return IntervalSet(Interval(q(lo), q(hi))); }

IntervalSet random_set(std::mt19937_64& rng) {
  std::vector<Interval> parts;
  const auto n = uniform_int(rng, 0, 4);
  for (std::int64_t i = 0; i < n; ++i) {
    Rational a = oracle::random_rational(rng, -4, 4);
    Rational b = a + oracle::random_rational(rng, 0, 2) + Rational(1, 64);
    parts.emplace_back(a, b);
  }
  return IntervalSet(std::move(parts));
}

}  // namespace

TEST_CASE("rational text form") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-4") == q(-4));
  CHECK(format_rational(q(-6, 4)) == "-3/2");
  CHECK(format_rational(q(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
}

TEST_CASE("interval set algebra") {
  CHECK(ae_subset(iset(0, 1), iset(0, 2)));
  CHECK_FALSE(ae_subset(iset(0, 2), iset(0, 1)));
  CHECK(iset(0, 1).intersect(iset(1, 2)).empty());
  CHECK(IntervalSet{Interval(q(-1), q(0)), Interval(q(2), q(4))}.measure() == 3);
  CHECK(IntervalSet{Interval(q(0), q(1)), Interval(q(1), q(2))} == iset(0, 2));
  CHECK(iset(0, 4).subtract(iset(1, 2)) ==
        IntervalSet{Interval(q(0), q(1)), Interval(q(2), q(4))});
  CHECK(iset(0, 1).contains(q(0)));
  CHECK_FALSE(iset(0, 1).contains(q(1)));
  CHECK_THROWS(Interval(q(1), q(1)));
}

TEST_CASE("interval set measure identities on random sets") {
  auto rng = trial_rng(7, 0);
  for (int t = 0; t < 300; ++t) {
    const IntervalSet a = random_set(rng), b = random_set(rng);
    CHECK(a.unite(b).measure() + a.intersect(b).measure() == a.measure() + b.measure());
    CHECK(ae_subset(a, b) == (a.subtract(b).measure() == 0));
    CHECK(a.subtract(b).unite(a.intersect(b)) == a);
  }
}

TEST_CASE("piecewise-affine maps") {
  // f_{e2} of the three-vertex example: [2,4) -> [1,2), x/2
  const PAMap f2({AffinePiece(Interval(q(2), q(4)), q(1, 2), q(0))});
  CHECK(f2.apply(q(3)) == q(3, 2));
  CHECK(f2.rn(q(3)) == q(1, 2));
  CHECK(f2.image() == iset(1, 2));
  CHECK_THROWS_AS(f2.apply(q(4)), std::domain_error);

  // inverse of x+1 on [-1,0): the affine map through (0,-1) and (1,0)
  const PAMap f1({AffinePiece(Interval(q(-1), q(0)), q(1), q(1))});
  const Rational x = q(1, 2);
  const Rational expected = q(-1) + (x - q(0)) * (q(0) - q(-1)) / (q(1) - q(0));
  CHECK(f1.inverse().apply(x) == expected);
  CHECK(expected == q(-1, 2));

  // decreasing pieces map [lo,hi) to the half-open image a.e.
  const PAMap g({AffinePiece(Interval(q(0), q(1)), q(-2), q(3))});
  CHECK(g.image() == iset(1, 3));
  CHECK(g.inverse().domain() == iset(1, 3));

  const PAMap overlap({AffinePiece(Interval(q(0), q(2)), q(1), q(0)),
                       AffinePiece(Interval(q(1), q(3)), q(1), q(5))});
  CHECK(overlap.injectivity_defect().has_value());
  CHECK_FALSE(f2.injectivity_defect().has_value());

  // same-formula neighbours merge
  const PAMap merged({AffinePiece(Interval(q(2), q(3)), q(1, 2), q(0)),
                      AffinePiece(Interval(q(3), q(4)), q(1, 2), q(0))});
  CHECK(merged == f2);
}

TEST_CASE("inverse undoes the map exactly at random points") {
  auto rng = trial_rng(11, 0);
  for (int t = 0; t < 200; ++t) {
    std::vector<AffinePiece> pieces;
    Rational lo = oracle::random_rational(rng, -5, 5);
    Rational target = oracle::random_rational(rng, -5, 5);
    const auto n = uniform_int(rng, 1, 4);
    for (std::int64_t k = 0; k < n; ++k) {
      const Rational len = oracle::random_rational(rng, 0, 2) + Rational(1, 32);
      const Rational img_len = oracle::random_rational(rng, 0, 3) + Rational(1, 16);
      AffinePiece p = affine_onto(Interval(lo, lo + len), Interval(target, target + img_len));
      if (uniform_int(rng, 0, 1)) {
        // flip orientation: same image, reversed
        p = AffinePiece(p.src, -p.slope, target + img_len + p.slope * lo);
      }
      pieces.push_back(p);
      lo += len;
      target += img_len;
    }
    const PAMap f(pieces);
    REQUIRE_FALSE(f.injectivity_defect().has_value());
    const PAMap inv = f.inverse();
    for (int s = 0; s < 10; ++s) {
      const Interval& src = f.pieces()[uniform_int(rng, 0, f.pieces().size() - 1)].src;
      // interior points: a reversed piece sends src.lo to the open end of its image
      const Rational x = src.lo + src.length() * Rational(uniform_int(rng, 1, 99), 100);
      CHECK(inv.apply(f.apply(x)) == x);
      CHECK(f.rn(x) * inv.rn(f.apply(x)) == 1);
    }
  }
}

TEST_CASE("ppoly examples") {
  const PPoly one = PPoly::constant(iset(-1, 4), 1.0);
  CHECK(one.restrict_to(iset(-1, 0)).pieces().size() == 1);
  CHECK(one.restrict_to(iset(-1, 0)).support() == iset(-1, 0));
  CHECK(one.restrict_to(iset(-1, 0)).eval(q(-1, 2)) == Complex(1.0));

  const PPoly c = PPoly::constant(iset(0, 1), Complex(1, 1));
  const PPoly sq = c.square();
  CHECK(sq.support() == iset(0, 1));
  CHECK(sq.eval(q(1, 2)) == Complex(0, 2));

  // support of chi_[2,4) o (x -> 2x), checked on a grid of exact points
  const PPoly ind = PPoly::constant(iset(2, 4), 1.0);
  const PPoly comp = ind.compose_affine(q(2), q(0));
  for (int k = -40; k <= 60; ++k) {
    const Rational x(k, 10);
    const bool inside = iset(2, 4).contains(2 * x);
    CHECK(comp.support().contains(x) == inside);
    CHECK(comp.eval(x) == Complex(inside ? 1.0 : 0.0));
  }
  CHECK(comp.support() == iset(1, 2));

  CHECK(integrate(PPoly::constant(iset(0, 1), 1.0), iset(0, 2)) == Complex(1.0));
  CHECK(norm2(PPoly::constant(iset(1, 2), std::sqrt(2.0))) == doctest::Approx(std::sqrt(2.0)));
  CHECK(inner_product(PPoly::constant(iset(0, 1), 1.0), PPoly::constant(iset(1, 2), 1.0)) ==
        Complex(0.0));
}

TEST_CASE("ppoly global coefficients round trip") {
  const PPoly f = PPoly::from_global(Interval(q(3), q(5)), {Complex(1), Complex(-2), Complex(0.5)});
  for (int k = 0; k < 20; ++k) {
    const double x = 3 + 0.1 * k;
    CHECK(std::abs(f.eval(x) - Complex(1 - 2 * x + 0.5 * x * x)) < 1e-12);
  }
  const auto g = f.pieces().front().global_coeffs();
  REQUIRE(g.size() == 3);
  CHECK(std::abs(g[0] - Complex(1)) < 1e-12);
  CHECK(std::abs(g[1] - Complex(-2)) < 1e-12);
  CHECK(std::abs(g[2] - Complex(0.5)) < 1e-12);
}

TEST_CASE("ppoly overlapping pieces add and zero pieces vanish") {
  const PPoly f = PPoly::from_pieces({{Interval(q(0), q(2)), {Complex(1)}},
                                      {Interval(q(1), q(3)), {Complex(2)}}});
  CHECK(f.eval(q(1, 2)) == Complex(1));
  CHECK(f.eval(q(3, 2)) == Complex(3));
  CHECK(f.eval(q(5, 2)) == Complex(2));
  CHECK((f - f).is_zero());
}

TEST_CASE("degree limit is enforced") {
  std::vector<Complex> c(11, Complex(1));
  const PPoly f = PPoly::from_global(Interval(q(0), q(1)), c);
  CHECK(f.degree() == 10);
  CHECK_THROWS_AS(f * f, DegreeOverflow);
  CHECK_THROWS_AS(PPoly::from_global(Interval(q(0), q(1)), std::vector<Complex>(18, 1.0)),
                  DegreeOverflow);
}

TEST_CASE("pointwise algebra at random rational points") {
  for (int t = 0; t < 30; ++t) {
    auto rng = trial_rng(21, t);
    const IntervalSet dom = iset(-3, 5);
    const PPoly f = random_probe(rng, dom, 4), g = random_probe(rng, dom, 4);
    const Complex s(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1);
    const PPoly sum = f + g, prod = f * g, sc = f.scaled(s), diff = f - g;
    for (int k = 0; k < 100; ++k) {
      const Rational x = oracle::random_rational(rng, -3, 5);
      const Complex fx = f.eval(x), gx = g.eval(x);
      const double sf = oracle::abs_eval(f, x), sg = oracle::abs_eval(g, x);
      CHECK(std::abs(sum.eval(x) - (fx + gx)) <= 1e-13 * (1 + sf + sg));
      CHECK(std::abs(diff.eval(x) - (fx - gx)) <= 1e-13 * (1 + sf + sg));
      CHECK(std::abs(prod.eval(x) - fx * gx) <= 1e-13 * (1 + sf * sg));
      CHECK(std::abs(sc.eval(x) - s * fx) <= 1e-13 * (1 + sf));
    }
  }
}

TEST_CASE("affine change of variables preserves integrals") {
  auto rng = trial_rng(31, 0);
  for (int t = 0; t < 200; ++t) {
    const Rational lo = oracle::random_rational(rng, -5, 5);
    const Interval src(lo, lo + oracle::random_rational(rng, 0, 3) + Rational(1, 8));
    const Rational tlo = oracle::random_rational(rng, -5, 5);
    const Interval dst(tlo, tlo + oracle::random_rational(rng, 0, 3) + Rational(1, 8));
    AffinePiece piece = affine_onto(src, dst);
    if (uniform_int(rng, 0, 1)) piece = AffinePiece(src, -piece.slope, dst.hi + piece.slope * src.lo);
    REQUIRE(piece.image() == dst);

    std::vector<Complex> c;
    const auto degree = uniform_int(rng, 0, 6);
    for (std::int64_t k = 0; k <= degree; ++k) c.emplace_back(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1);
    const PPoly phi = PPoly::from_pieces({{src, c}});

    const Rational inv_a = 1 / piece.slope;
    const PPoly moved = phi.compose_affine(inv_a, Rational(-piece.offset * inv_a))
                            .scaled(to_double(abs(inv_a)));
    const Complex before = integrate(phi, IntervalSet(src));
    const Complex after = integrate(moved, IntervalSet(dst));
    CHECK(std::abs(after - before) <= 1e-12 * std::max(1.0, std::abs(before)));
  }
}

TEST_CASE("root isolation") {
  // (t - 0.3)(t - 0.7) = t^2 - t + 0.21
  const auto roots = real_roots({0.21, -1.0, 1.0}, 1.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(real_roots({1.0, 0.0, 1.0}, 5.0).empty());
  // |t - 1/2| on [0, 1] integrates to 1/4
  const PPoly f = PPoly::from_pieces({{Interval(q(0), q(1)), {Complex(-0.5), Complex(1)}}});
  CHECK(norm1(f) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("L1 norm agrees with Simpson quadrature") {
  for (int t = 0; t < 60; ++t) {
    auto rng = trial_rng(41, t);
    const PPoly f = random_probe(rng, iset(-2, 3), 4, /*real_only=*/true);
    CHECK(std::abs(norm1(f) - oracle::simpson_norm1(f)) <= 1e-8);
  }
  for (int t = 0; t < 20; ++t) {
    auto rng = trial_rng(43, t);
    const PPoly f = random_probe(rng, iset(-2, 3), 3);
    CHECK(std::abs(norm1(f) - oracle::simpson_norm1(f)) <= 1e-8);
  }
}
