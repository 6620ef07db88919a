#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "lrgauge/cantor.hpp"
#include "lrgauge/enclosure.hpp"
#include "lrgauge/interval_union.hpp"
#include "lrgauge/polynomial.hpp"

namespace lrgauge {

struct Piece {
  Segment seg;
  Polynomial poly;
};

/// Continuous test function made of polynomial pieces that tile its domain.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::string name, std::vector<Piece> pieces);

  static PiecewisePolynomial polynomial(std::string name, Polynomial p, Segment domain);
  static PiecewisePolynomial zero(Segment domain);
  static PiecewisePolynomial identity(Segment domain);
  static PiecewisePolynomial square(Segment domain);
  /// |y| on a domain containing 0.
  static PiecewisePolynomial absolute(Segment domain);

  const std::string& name() const { return name_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Segment& domain() const { return domain_; }

  /// Value of the first piece containing x. Throws OutOfDomain.
  Rational value_at(const Rational& x) const;
  Rational derivative_at(const Rational& x) const;
  PiecewisePolynomial derivative() const;

 private:
  std::string name_;
  std::vector<Piece> pieces_;
  Segment domain_;
};

/// The Cantor-set counterexample on [0, 1]: zero on the Cantor set, a plateau on the
/// concentric middle part v of every contiguous interval u of rank n, and smoothstep
/// bridges s(t) = 3t^2 - 2t^3 across the two remaining parts of u.
///
/// Main: plateau |v| / |u| = 1/2 at height 1/n. Thin: |v| / |u| = base^n at height 1.
class CounterexampleF {
 public:
  enum class Variant { Main, Thin };
  enum class Bridge { Smoothstep };

  static constexpr std::size_t kDefaultCutoff = 40;

  static CounterexampleF main(std::size_t cutoff_depth = kDefaultCutoff);
  static CounterexampleF thin(Rational ratio_base = Rational(1, 4), std::size_t cutoff_depth = kDefaultCutoff);

  Variant variant() const { return variant_; }
  Bridge bridge() const { return Bridge::Smoothstep; }
  std::size_t cutoff_depth() const { return cutoff_; }
  const Rational& ratio_base() const { return ratio_base_; }
  std::string name() const { return variant_ == Variant::Main ? "main" : "thin"; }

  /// Plateau height on gaps of this rank (rank >= 1).
  Rational height(std::size_t rank) const;
  /// |v| / |u| on gaps of this rank.
  Rational plateau_ratio(std::size_t rank) const;
  /// Supremum of F over any rank-m segment (attained on its rank-(m+1) gap).
  Rational sup_inside(std::size_t rank) const;

  /// Bridge, plateau, bridge over the closure of contiguous_interval(parent),
  /// whose left end is placed at `origin` (absolute placement when origin is the true left end).
  std::vector<Piece> gap_pieces(std::size_t gap_rank, const Rational& origin) const;

 private:
  CounterexampleF(Variant v, Rational base, std::size_t cutoff);
  Variant variant_;
  Rational ratio_base_;
  std::size_t cutoff_;
};

using Primitive = std::variant<CounterexampleF, PiecewisePolynomial>;

Segment domain_of(const Primitive& F);
std::string name_of(const Primitive& F);

/// Exact on the Cantor set and on gaps of rank <= cutoff; otherwise [0, sup] of the
/// deepest resolved segment. Throws OutOfDomain.
Enclosure value_at(const CounterexampleF& F, const Rational& x);
Enclosure value_at(const Primitive& F, const Rational& x);
/// Exact value, or DepthExceeded when the point does not resolve.
Rational exact_value_at(const Primitive& F, const Rational& x);

/// F' off the Cantor set, 0 on it. Throws DepthExceeded past the cutoff.
Rational derivative_at(const CounterexampleF& F, const Rational& x);
Rational derivative_at(const Primitive& F, const Rational& x);

/// The affine function value + slope * (y - anchor).
struct AffineReference {
  Rational value{0};
  Rational slope{0};
  Rational anchor{0};

  Polynomial as_polynomial() const { return Polynomial::affine(slope, value - slope * anchor); }
};

/// Encloses the integral over seg of |F(y) - ref(y)|^r with width <= max_width.
/// Throws OutOfDomain, or WidthUnachievable when the depth limits stop refinement first.
Enclosure integrate_abs_pow(const Primitive& F, const Segment& seg, const AffineReference& ref, unsigned r,
                            const Rational& max_width = default_max_width());

/// Integral of F^r over a plateau of rank n of the main function: 1 / (2 n^r 3^n).
Rational vn_integral_exact(unsigned n, unsigned r);

/// Upper bound of |F(y) - c| over seg.
Rational sup_deviation_bound(const Primitive& F, const Segment& seg, const Rational& c);

/// Inner and outer approximations of {y in seg : |F(y) - c| <= w} for w in threshold.
/// Points with equality go to the inner set. Throws WidthUnachievable when the
/// undecided measure exceeds max_width.
struct SublevelSet {
  IntervalUnion inner;
  IntervalUnion outer;
};
SublevelSet sublevel_set(const Primitive& F, const Segment& seg, const Rational& c, const Enclosure& threshold,
                         const Rational& max_width = default_max_width());

}  // namespace lrgauge
