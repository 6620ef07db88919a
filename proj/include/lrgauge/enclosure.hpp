#pragma once

#include <ostream>
#include <string>

#include "lrgauge/rational.hpp"

namespace lrgauge {

/// Two-sided bound [lo, hi] on a real quantity. Invariant: lo <= hi.
class Enclosure {
 public:
  Enclosure() = default;
  Enclosure(Rational exact) : lo_(exact), hi_(std::move(exact)) {}  // NOLINT(google-explicit-constructor)
  Enclosure(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / Rational(2); }
  bool is_exact() const { return lo_ == hi_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& e) const { return lo_ <= e.lo_ && e.hi_ <= hi_; }

  Enclosure abs() const;
  Enclosure pow(unsigned k) const;
  /// Division by a nonzero exact rational.
  Enclosure operator/(const Rational& d) const;
  /// Outward rounding to a dyadic grid of 2^-bits; keeps denominators bounded.
  Enclosure rounded(unsigned bits) const;

  /// "lo..hi" with exact rationals.
  std::string str() const;
  std::string decimal(int digits = 12) const;

  Enclosure& operator+=(const Enclosure& o);
  Enclosure& operator-=(const Enclosure& o);

  friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
  friend Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }
  friend Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi_, -a.lo_); }
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Enclosure& e) { return os << e.str(); }

 private:
  Rational lo_;
  Rational hi_;
};

enum class ArithOp { Add, Sub, Mul, Pow };

/// Interval arithmetic entry point. For Pow, `exponent` must be positive and a.lo() >= 0.
Enclosure enclosure_arith(const Enclosure& a, const Enclosure& b, ArithOp op, unsigned exponent = 1);

inline const Rational& default_max_width() {
  static const Rational w = Rational::inverse_power(10, 12);
  return w;
}

/// Encloses x^(1/r) for every value in x, by bisection on y^r.
/// The width beyond what the input width induces is at most max_width.
Enclosure root_enclosure(const Enclosure& x, unsigned r, const Rational& max_width = default_max_width());

}  // namespace lrgauge
