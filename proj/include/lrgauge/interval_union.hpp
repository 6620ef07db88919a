#pragma once

#include <vector>

#include "lrgauge/segment.hpp"

namespace lrgauge {

/// Finite union of segments, kept sorted with no two parts overlapping or touching.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Segment> parts);

  const std::vector<Segment>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(const Rational& x) const;
  IntervalUnion intersect(const Segment& s) const;
  IntervalUnion unite(const IntervalUnion& other) const;
  /// Closure of s minus this set.
  IntervalUnion complement_in(const Segment& s) const;
  IntervalUnion translated(const Rational& offset) const;
  /// Image under t -> -t.
  IntervalUnion reflected() const;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<Segment> parts_;
};

/// Exact Lebesgue measure.
Rational union_measure(const IntervalUnion& u);

}  // namespace lrgauge
