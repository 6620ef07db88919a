#include <random>

#include "doctest.h"
#include "lrgauge/error.hpp"
#include "lrgauge/functions.hpp"
#include "oracles.hpp"

using namespace lrgauge;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

const Segment kUnit(q(0), q(1));
const AffineReference kZeroRef{};

cantor::Address left_chain(std::size_t rank) { return cantor::Address(std::string(rank, 'L')); }

}  // namespace

TEST_CASE("pointwise values of the counterexample") {
  CounterexampleF F = CounterexampleF::main();
  CHECK(value_at(F, q(1, 2)) == Enclosure(q(1)));
  CHECK(value_at(F, q(0)) == Enclosure(q(0)));
  CHECK(value_at(F, q(3, 8)) == Enclosure(q(1, 2)));
  CHECK(value_at(F, q(1, 4)) == Enclosure(q(0)));
  CHECK(value_at(F, q(3, 18)) == Enclosure(q(1, 2)));  // centre of the rank-2 plateau under "L"
  CHECK_THROWS_AS(value_at(F, q(-1, 9)), Error);

  // a point in a gap of rank 45 only resolves to [0, 1/(D+1)]
  Rational deep = Rational::inverse_power(3, 45) * q(3, 2);
  CHECK(value_at(F, deep) == Enclosure(q(0), q(1, 41)));
  CHECK_THROWS_AS(exact_value_at(F, deep), Error);
  CHECK(value_at(CounterexampleF::main(50), deep) == Enclosure(q(1, 45)));
}

TEST_CASE("pointwise derivative") {
  CounterexampleF F = CounterexampleF::main();
  CHECK(derivative_at(F, q(1, 2)) == q(0));
  CHECK(derivative_at(F, q(0)) == q(0));
  CHECK(derivative_at(F, q(3, 8)) == q(18));
  CHECK_THROWS_AS(derivative_at(F, Rational::inverse_power(3, 45) * q(3, 2)), Error);
}

TEST_CASE("values stay in range and pieces join continuously") {
  for (Primitive G : {Primitive(CounterexampleF::main()), Primitive(CounterexampleF::thin())}) {
    const CounterexampleF& F = std::get<CounterexampleF>(G);
    for (std::size_t rank = 1; rank <= 6; ++rank) {
      auto pieces = F.gap_pieces(rank, q(0));
      REQUIRE(pieces.size() == 3);
      CHECK(pieces[0].poly(pieces[0].seg.left()) == q(0));
      CHECK(pieces[2].poly(pieces[2].seg.right()) == q(0));
      for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        CHECK(pieces[i].poly(pieces[i].seg.right()) == pieces[i + 1].poly(pieces[i + 1].seg.left()));
        CHECK(pieces[i].poly.derivative()(pieces[i].seg.right()) ==
              pieces[i + 1].poly.derivative()(pieces[i + 1].seg.left()));
      }
      CHECK(pieces[1].poly(pieces[1].seg.center()) == F.height(rank));
      CHECK(pieces[1].seg.length() == F.plateau_ratio(rank) * cantor::rank_length(rank));
    }
    for (long num = 0; num <= 729; ++num) {
      Enclosure v = value_at(G, Rational(num, 729));
      CHECK(v.lo().sign() >= 0);
      CHECK(v.hi() <= q(1));
    }
  }
}

TEST_CASE("derivative matches central differences on bridges") {
  // F is a cubic on each bridge, so the central difference error is exactly h^2 F''' / 6 with
  // |F'''| = 12 H / b^3 for bridge length b and height H.
  CounterexampleF F = CounterexampleF::main();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> rank_pick(1, 6);
  std::uniform_int_distribution<long> pos(1, 999);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rank = static_cast<std::size_t>(rank_pick(rng));
    unsigned long long idx = rng() % (1ULL << (rank - 1));
    cantor::Address parent = cantor::Address().extension(rank - 1, idx);
    auto pieces = F.gap_pieces(rank, cantor::contiguous_interval(parent).left());
    const Piece& bridge = pieces[(rng() % 2) ? 0 : 2];
    Rational b = bridge.seg.length();
    Rational x = bridge.seg.left() + b * Rational(pos(rng), 1000);
    Rational h = b / q(2000);
    Rational fd = (exact_value_at(F, x + h) - exact_value_at(F, x - h)) / (q(2) * h);
    Rational bound = h * h * q(2) * F.height(rank) / b.pow(3);
    CHECK((fd - derivative_at(F, x)).abs() <= bound);
  }
}

TEST_CASE("plateau integrals") {
  CHECK(vn_integral_exact(1, 1) == q(1, 6));
  CHECK(vn_integral_exact(2, 1) == q(1, 36));
  CHECK(vn_integral_exact(2, 2) == q(1, 72));
  CounterexampleF F = CounterexampleF::main();
  CHECK(integrate_abs_pow(F, cantor::v_interval(cantor::Address("")), kZeroRef, 1) == Enclosure(q(1, 6)));
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned r = 1; r <= 3; ++r) {
      Enclosure v = integrate_abs_pow(F, cantor::v_interval(left_chain(n - 1)), kZeroRef, r);
      CHECK(v == Enclosure(vn_integral_exact(n, r)));
      Enclosure u = integrate_abs_pow(F, cantor::contiguous_interval(left_chain(n - 1)), kZeroRef, r);
      CHECK(u.lo() > vn_integral_exact(n, r));
    }
  Enclosure u2 = integrate_abs_pow(F, Segment(q(1, 9), q(2, 9)), kZeroRef, 1);
  CHECK(u2.lo() >= q(1, 36));
  // F is identically 1 on v_1
  CHECK(integrate_abs_pow(F, Segment(q(5, 12), q(1, 2)), AffineReference{q(1), q(0), q(0)}, 3) == Enclosure(q(0)));
}

TEST_CASE("unit integrals against the gap-rank series") {
  CounterexampleF F = CounterexampleF::main();
  for (unsigned r = 1; r <= 3; ++r) {
    auto [lo, hi] = oracle::unit_integral_series(r, 120);
    Enclosure got = integrate_abs_pow(F, kUnit, kZeroRef, r);
    CHECK(got.width() <= default_max_width());
    CHECK(got.lo() <= hi);
    CHECK(lo <= got.hi());
  }
  // frozen from the series at r = 1: 0.41197960825054...
  Enclosure r1 = integrate_abs_pow(F, kUnit, kZeroRef, 1);
  CHECK(r1.lo() > Rational::parse("0.411979608250"));
  CHECK(r1.hi() < Rational::parse("0.411979608251"));
  // one rank-1 gap carries K_1 / 3 = 1/4
  CHECK(integrate_abs_pow(F, Segment(q(1, 3), q(2, 3)), kZeroRef, 1) == Enclosure(q(1, 4)));
}

TEST_CASE("integrals with an affine reference against a midpoint rule") {
  CounterexampleF F = CounterexampleF::main();
  struct Case {
    Rational a, b;
    AffineReference ref;
    unsigned r;
  };
  std::vector<Case> cases{
      {q(3, 10), q(9, 20), {q(1, 10), q(7, 10), q(3, 10)}, 1},
      {q(3, 10), q(9, 20), {q(1, 10), q(7, 10), q(3, 10)}, 3},
      {q(0), q(1), {q(1, 5), q(-1, 4), q(1, 2)}, 2},
      {q(1, 27), q(8, 9), {q(0), q(-1, 3), q(0)}, 1},
      {q(1, 27), q(8, 9), {q(0), q(-1, 3), q(0)}, 3},
  };
  for (const auto& c : cases) {
    Enclosure got = integrate_abs_pow(F, Segment(c.a, c.b), c.ref, c.r);
    CHECK(got.width() <= default_max_width());
    double approx = oracle::midpoint_rule(
        [&](double y) {
          Rational yr(mpq_class{y});
          double fy = value_at(F, yr).mid().to_double();
          double d = fy - c.ref.value.to_double() - c.ref.slope.to_double() * (y - c.ref.anchor.to_double());
          return std::pow(std::abs(d), c.r);
        },
        c.a.to_double(), c.b.to_double(), 20000);
    CHECK(std::abs(got.mid().to_double() - approx) < 1e-3);
  }
}

TEST_CASE("odd powers with a sign-changing reference stay narrow") {
  CounterexampleF F = CounterexampleF::main();
  AffineReference ref{q(1, 7), q(0), q(0)};
  for (unsigned r : {1U, 3U}) {
    Enclosure e = integrate_abs_pow(F, kUnit, ref, r, Rational::inverse_power(10, 14));
    CHECK(e.width() <= Rational::inverse_power(10, 14));
  }
}

TEST_CASE("thin-plateau variant") {
  CounterexampleF E = CounterexampleF::thin();
  CHECK(E.height(3) == q(1));
  CHECK(E.plateau_ratio(2) == q(1, 16));
  CHECK(E.name() == "thin");
  CHECK(value_at(E, q(1, 2)) == Enclosure(q(1)));
  Segment plateau = E.gap_pieces(1, q(1, 3))[1].seg;
  CHECK(plateau == Segment(q(11, 24), q(13, 24)));
  CHECK(integrate_abs_pow(E, plateau, kZeroRef, 2) == Enclosure(q(1, 12)));
  CHECK_THROWS_AS(CounterexampleF::thin(q(1)), Error);
}

TEST_CASE("piecewise polynomial test functions") {
  Segment sym(q(-1), q(1));
  auto abs = PiecewisePolynomial::absolute(sym);
  CHECK(abs.value_at(q(-1, 2)) == q(1, 2));
  CHECK(abs.value_at(q(1, 3)) == q(1, 3));
  CHECK(integrate_abs_pow(abs, sym, kZeroRef, 1) == Enclosure(q(1)));
  auto sq = PiecewisePolynomial::square(kUnit);
  CHECK(sq.derivative_at(q(1, 2)) == q(1));
  CHECK_THROWS_AS(sq.value_at(q(2)), Error);
  CHECK(integrate_abs_pow(sq, kUnit, AffineReference{q(1, 4), q(1), q(1, 2)}, 1) == Enclosure(q(1, 12)));
  CHECK(integrate_abs_pow(PiecewisePolynomial::identity(kUnit), kUnit, kZeroRef, 1) == Enclosure(q(1, 2)));
  CHECK_THROWS_AS(integrate_abs_pow(sq, Segment(q(0), q(2)), kZeroRef, 1), Error);
}

TEST_CASE("sup deviation bounds") {
  CounterexampleF F = CounterexampleF::main();
  CHECK(sup_deviation_bound(F, kUnit, q(0)) >= q(1));
  CHECK(sup_deviation_bound(F, Segment(q(0), q(1, 3)), q(0)) >= q(1, 2));
  CHECK(sup_deviation_bound(PiecewisePolynomial::square(kUnit), kUnit, q(1, 4)) >= q(3, 4));
}

TEST_CASE("sublevel sets") {
  auto id = PiecewisePolynomial::identity(kUnit);
  SublevelSet s = sublevel_set(id, kUnit, q(0), Enclosure(q(1, 2)));
  CHECK(s.inner == IntervalUnion({Segment(q(0), q(1, 2))}));
  CHECK(union_measure(s.outer) - q(1, 2) <= default_max_width());

  CounterexampleF F = CounterexampleF::main();
  SublevelSet t = sublevel_set(F, kUnit, q(0), Enclosure(q(1, 3)));
  CHECK_FALSE(t.inner.contains(q(1, 2)));
  CHECK_FALSE(t.outer.contains(q(1, 2)));
  CHECK_FALSE(t.outer.contains(q(1, 6)));
  CHECK(t.inner.contains(q(1, 4)));
  CHECK(t.inner.contains(q(1, 18)));  // rank-3 plateau sits exactly at the threshold
  CHECK(union_measure(t.outer) - union_measure(t.inner) <= default_max_width());
}
