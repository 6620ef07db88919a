#pragma once

#include <optional>
#include <ostream>

#include "lrgauge/rational.hpp"

namespace lrgauge {

/// Compact interval [left, right] with left < right.
class Segment {
 public:
  Segment(Rational left, Rational right);

  /// Segment spanned by two points given in either order (the oriented <a,b> notation).
  static Segment between(const Rational& a, const Rational& b);

  const Rational& left() const { return left_; }
  const Rational& right() const { return right_; }
  Rational length() const { return right_ - left_; }
  Rational center() const { return (left_ + right_) / Rational(2); }

  bool contains(const Rational& x) const { return left_ <= x && x <= right_; }
  bool contains(const Segment& s) const { return left_ <= s.left_ && s.right_ <= right_; }
  bool interior_contains(const Rational& x) const { return left_ < x && x < right_; }
  /// True when the interiors meet.
  bool overlaps(const Segment& s) const { return left_ < s.right_ && s.left_ < right_; }

  /// Nondegenerate intersection, if any.
  std::optional<Segment> intersect(const Segment& s) const;

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.left_ == b.left_ && a.right_ == b.right_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Segment& s) {
    return os << '[' << s.left_ << ", " << s.right_ << ']';
  }

 private:
  Rational left_;
  Rational right_;
};

}  // namespace lrgauge
