#include <random>

#include "doctest.h"
#include "lrgauge/error.hpp"
#include "lrgauge/partitions.hpp"

using namespace lrgauge;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

const Segment kUnit(q(0), q(1));

Gauge random_gauge(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<long> den(1, 400);
  std::uniform_int_distribution<long> cut(1, 99);
  switch (kind(rng)) {
    case 0:
      return Gauge::constant(Rational(1, den(rng)));
    case 1: {
      std::vector<Rational> breaks;
      for (int i = 0, n = 1 + static_cast<int>(rng() % 5); i < n; ++i) breaks.emplace_back(cut(rng), 100);
      std::sort(breaks.begin(), breaks.end());
      breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
      std::vector<Rational> values;
      for (std::size_t i = 0; i <= breaks.size(); ++i) values.emplace_back(1, den(rng));
      return Gauge(PiecewiseConstantGauge{breaks, values, Rational(1, den(rng))});
    }
    default: {
      CantorRankGauge g{{}, Rational(1, den(rng))};
      for (int i = 0, n = 1 + static_cast<int>(rng() % 4); i < n; ++i) {
        std::string word;
        for (int k = 0, len = 1 + static_cast<int>(rng() % 5); k < len; ++k) word += (rng() % 2) ? 'R' : 'L';
        g.values[cantor::Address(word)] = Rational(1, den(rng));
      }
      return Gauge(std::move(g));
    }
  }
}

}  // namespace

TEST_CASE("gauge values") {
  CHECK(gauge_at(Gauge::constant(q(1, 5)), q(7, 10)) == q(1, 5));
  Gauge pwc(PiecewiseConstantGauge{{q(1, 2)}, {q(1, 10), q(1, 100)}, q(1)});
  CHECK(gauge_at(pwc, q(3, 4)) == q(1, 100));
  CHECK(gauge_at(pwc, q(1, 4)) == q(1, 10));
  CHECK(gauge_at(pwc, q(1, 2)) == q(1, 100));
  Gauge short_pwc(PiecewiseConstantGauge{{q(1, 2)}, {q(1, 10)}, q(1, 3)});
  CHECK(gauge_at(short_pwc, q(3, 4)) == q(1, 3));
  Gauge rank(CantorRankGauge{{{cantor::Address("L"), q(1, 3)}}, q(1)});
  CHECK(gauge_at(rank, q(1, 4)) == q(1, 3));
  CHECK(gauge_at(rank, q(1, 2)) == q(1));
  CHECK_THROWS_AS(gauge_at(rank, q(3, 2)), Error);
  CHECK_THROWS_AS(Gauge::constant(q(0)), Error);
}

TEST_CASE("gauge infimum over rank segments") {
  Gauge rank(CantorRankGauge{{{cantor::Address("L"), q(1, 3)}, {cantor::Address("LRR"), q(1, 50)}}, q(1)});
  CHECK(gauge_inf_on_rank_segment(rank, cantor::Address("")) == q(1, 50));
  CHECK(gauge_inf_on_rank_segment(rank, cantor::Address("LL")) == q(1, 3));
  CHECK(gauge_inf_on_rank_segment(rank, cantor::Address("R")) == q(1));
  CHECK(gauge_varies_inside(rank, cantor::Address("L")));
  CHECK_FALSE(gauge_varies_inside(rank, cantor::Address("RL")));
  Gauge pwc(PiecewiseConstantGauge{{q(1, 2)}, {q(1, 10), q(1, 100)}, q(1)});
  CHECK(gauge_inf_on_rank_segment(pwc, cantor::Address("")) == q(1, 100));
  CHECK(gauge_inf_on_rank_segment(pwc, cantor::Address("L")) == q(1, 10));
}

TEST_CASE("gauge files and descriptions") {
  Gauge pwc = Gauge::pwc_from_csv("breakpoint,value\n1/2,1/100\ndefault,1/10\n");
  CHECK(gauge_at(pwc, q(1, 4)) == q(1, 10));
  CHECK(gauge_at(pwc, q(3, 4)) == q(1, 100));
  Gauge rank = Gauge::rank_from_csv("prefix,value\nL,1/3\ndefault,1\n");
  CHECK(gauge_at(rank, q(1, 4)) == q(1, 3));
  CHECK(rank.describe() == "rank:default=1;L=1/3");
  CHECK(Gauge::constant(q(1, 5)).describe() == "const:1/5");
  CHECK(Gauge::from_spec("const:0.2").describe() == "const:1/5");
  CHECK(pwc.describe().find(',') == std::string::npos);
  CHECK_THROWS_AS(Gauge::rank_from_csv("L,1/3\n"), Error);
  CHECK_THROWS_AS(Gauge::from_spec("wavy:1"), Error);
}

TEST_CASE("fineness") {
  Gauge one = Gauge::constant(q(1));
  CHECK(is_fine(TaggedInterval(kUnit, q(1, 2)), one));
  CHECK_FALSE(is_fine(TaggedInterval(kUnit, q(0)), one));
  CHECK_THROWS_AS(TaggedInterval(kUnit, q(2)), Error);
  // constructed interval: [1/3, 2/3] tagged at 1/3 under 1/m with 2/3^(n+l) < 1/m
  CHECK(is_fine(TaggedInterval(Segment(q(1, 3), q(2, 3)), q(1, 3)), one));
}

TEST_CASE("fineness is antitone in the segment") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> pt(0, 1000);
  for (int trial = 0; trial < 300; ++trial) {
    Gauge g = random_gauge(rng);
    Rational a(pt(rng), 1000), b(pt(rng), 1000);
    if (a == b) continue;
    Segment s = Segment::between(a, b);
    Rational tag = s.left() + s.length() * Rational(pt(rng), 1000);
    if (!is_fine(TaggedInterval(s, tag), g)) continue;
    Segment inner(s.left() + (tag - s.left()) / q(2), s.right() - (s.right() - tag) / q(2));
    if (inner.length().sign() > 0) CHECK(is_fine(TaggedInterval(inner, tag), g));
  }
}

TEST_CASE("division validation") {
  Division ok{{TaggedInterval(Segment(q(0), q(1, 2)), q(0)), TaggedInterval(Segment(q(1, 2), q(1)), q(1))}};
  CHECK(validate_division(ok));
  Division bad{{TaggedInterval(Segment(q(0), q(2, 3)), q(0)), TaggedInterval(Segment(q(1, 3), q(1)), q(1))}};
  CHECK_FALSE(validate_division(bad));
  CHECK(validate_division(Division{}));
  CHECK(ok.total_length() == q(1));
  Division back = division_from_csv(division_to_csv(ok));
  CHECK(back.items == ok.items);
}

TEST_CASE("cousin division examples") {
  Division single = cousin_division(kUnit, Gauge::constant(q(2)));
  REQUIRE(single.items.size() == 1);
  CHECK(single.items[0] == TaggedInterval(kUnit, q(1, 2)));

  Division d = cousin_division(kUnit, Gauge::constant(q(3, 10)));
  CHECK(d.items.size() >= 2);
  CHECK(validate_division(d));
  for (const auto& ti : d.items) CHECK(is_fine(ti, Gauge::constant(q(3, 10))));

  Gauge finer_near_zero(PiecewiseConstantGauge{{q(1, 4)}, {q(1, 1000), q(1, 5)}, q(1, 5)});
  Division p = cousin_division(kUnit, finer_near_zero);
  CHECK(p.items.front().seg().length() < p.items.back().seg().length());
  CHECK_THROWS_AS(cousin_division(kUnit, Gauge::constant(Rational::inverse_power(10, 30)), 20), Error);
}

TEST_CASE("cousin division over 500 random gauges") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    Gauge g = random_gauge(rng);
    Division d = cousin_division(kUnit, g);
    REQUIRE(validate_division(d));
    Rational cursor(0);
    for (const auto& ti : d.items) {
      CHECK(is_fine(ti, g));
      CHECK(ti.seg().left() == cursor);
      cursor = ti.seg().right();
    }
    CHECK(cursor == q(1));
    CHECK(d.total_length() == q(1));
  }
}

TEST_CASE("tag sets") {
  TagSet pts = FinitePoints{{q(0), q(1, 2)}};
  CHECK(tag_set_contains(pts, q(1, 2)));
  CHECK_FALSE(tag_set_contains(pts, q(1, 3)));
  CHECK(tag_set_contains(CantorAll{}, q(1, 4)));
  CHECK_FALSE(tag_set_contains(CantorAll{}, q(1, 2)));
  CHECK(tag_set_contains(CantorBelowRank{2}, q(2, 9)));
  CHECK_FALSE(tag_set_contains(CantorBelowRank{1}, q(2, 9)));
  CHECK_FALSE(tag_set_contains(CantorBelowRank{5}, q(1, 4)));
  Division d{{TaggedInterval(Segment(q(0), q(1, 3)), q(1, 3))}};
  CHECK(tagged_in(d, CantorBelowRank{1}));
  CHECK_FALSE(tagged_in(d, FinitePoints{{q(0)}}));
}
