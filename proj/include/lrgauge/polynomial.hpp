#pragma once

#include <vector>

#include "lrgauge/enclosure.hpp"
#include "lrgauge/segment.hpp"

namespace lrgauge {

/// Dense univariate polynomial with exact rational coefficients (c[i] multiplies y^i).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  /// scale * y + shift
  static Polynomial affine(const Rational& scale, const Rational& shift) { return Polynomial({shift, scale}); }
  static Polynomial monomial(unsigned k);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Rational operator()(const Rational& y) const;
  Polynomial derivative() const;
  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const;
  Rational integrate(const Rational& a, const Rational& b) const;
  /// p(scale * y + shift)
  Polynomial compose_affine(const Rational& scale, const Rational& shift) const;
  Polynomial pow(unsigned k) const;

  /// Bernstein coefficients of p on [a, b]; their hull bounds p there.
  std::vector<Rational> bernstein(const Rational& a, const Rational& b) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Encloses the integral of |p|^r over seg. Exact unless p changes sign inside seg
/// with r odd; then each sign change costs at most `leaf_tol` of width.
Enclosure integrate_abs_pow(const Polynomial& p, const Segment& seg, unsigned r, const Rational& leaf_tol);

/// Upper bound of |p| on seg.
Rational sup_abs_bound(const Polynomial& p, const Segment& seg);

/// Sublevel sets of |q| on seg: `inner` is certified to satisfy |q| <= w_inner,
/// `outer` covers every point with |q| <= w_outer. Leaves narrower than tol stay undecided
/// and go to `outer` only. Requires w_inner <= w_outer.
struct LevelParts {
  std::vector<Segment> inner;
  std::vector<Segment> outer;
};
void classify_sublevel(const Polynomial& q, const Segment& seg, const Rational& w_inner, const Rational& w_outer,
                       const Rational& tol, LevelParts& out);

}  // namespace lrgauge
