#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lrgauge/cantor.hpp"
#include "lrgauge/segment.hpp"

namespace lrgauge {

/// Pair (I, x) with x in I.
class TaggedInterval {
 public:
  TaggedInterval(Segment seg, Rational tag);

  const Segment& seg() const { return seg_; }
  const Rational& tag() const { return tag_; }

  friend bool operator==(const TaggedInterval&, const TaggedInterval&) = default;

 private:
  Segment seg_;
  Rational tag_;
};

/// Finite collection of tagged intervals. Need not cover anything.
struct Division {
  std::vector<TaggedInterval> items;

  Rational total_length() const;
};

/// Distinct items must not share interior points and every tag lies in its segment.
bool validate_division(const Division& d);

/// "left,right,tag" rows, with a header line.
std::string division_to_csv(const Division& d);
Division division_from_csv(const std::string& text);

struct ConstantGauge {
  Rational value;
};

/// values[i] applies on [breakpoints[i-1], breakpoints[i]) with open ends at +-infinity;
/// cells past the end of `values` use `fallback`.
struct PiecewiseConstantGauge {
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;
  Rational fallback;
};

/// Value of the longest key that prefixes the point's address, else `fallback`. Domain [0, 1].
struct CantorRankGauge {
  std::map<cantor::Address, Rational> values;
  Rational fallback;
};

/// Strictly positive function, as a closed datatype so the variation search can inspect it.
class Gauge {
 public:
  using Variant = std::variant<ConstantGauge, PiecewiseConstantGauge, CantorRankGauge>;

  explicit Gauge(Variant v);
  static Gauge constant(Rational value) { return Gauge(ConstantGauge{std::move(value)}); }

  /// "const:RAT", "pwc:FILE" or "rank:FILE"; see README for the file layout.
  static Gauge from_spec(const std::string& spec);
  static Gauge pwc_from_csv(const std::string& text);
  static Gauge rank_from_csv(const std::string& text);

  const Variant& variant() const { return v_; }
  /// Compact one-line description without commas, usable as a CSV cell.
  std::string describe() const;

 private:
  Variant v_;
};

/// Throws OutOfDomain for a CantorRank gauge outside [0, 1].
Rational gauge_at(const Gauge& g, const Rational& x);

/// Lower bound of the gauge over rank_segment(a).
Rational gauge_inf_on_rank_segment(const Gauge& g, const cantor::Address& a);

/// False when the gauge infimum is the same on every sub-rank-segment of a.
bool gauge_varies_inside(const Gauge& g, const cantor::Address& a);

/// tag - delta(tag) < left and right < tag + delta(tag).
bool is_fine(const TaggedInterval& ti, const Gauge& g);

/// Cousin bisection: a delta-fine division covering seg exactly.
/// Throws DepthExceeded past max_depth bisections.
Division cousin_division(const Segment& seg, const Gauge& g, unsigned max_depth = 64);

/// Candidate tag sets E.
struct FinitePoints {
  std::vector<Rational> points;
};
struct CantorAll {};
/// Endpoints of Cantor rank segments of rank <= rank.
struct CantorBelowRank {
  std::size_t rank;
};
using TagSet = std::variant<FinitePoints, CantorAll, CantorBelowRank>;

bool tag_set_contains(const TagSet& e, const Rational& x);
bool tagged_in(const Division& d, const TagSet& e);

}  // namespace lrgauge
