#pragma once

#include <string>
#include <vector>

#include "lrgauge/functions.hpp"
#include "lrgauge/partitions.hpp"

namespace lrgauge::lr {

/// Readings of a probe along strictly decreasing h.
struct ProbeSeries {
  std::vector<Rational> h;
  std::vector<Enclosure> readings;

  /// "h,reading_lo,reading_hi" rows with a header.
  std::string to_csv() const;
};

/// ((1/|I|) * integral over I of |F(y) - F(x)|^r dy)^(1/r) for the tagged interval (I, x).
/// The tag value must resolve exactly.
Enclosure delta_r(const Primitive& F, const TaggedInterval& ti, unsigned r,
                  const Rational& max_width = default_max_width());

/// delta_r on the oriented segment <x, x+h> tagged at x. Throws ZeroLength for h = 0.
Enclosure omega(const Primitive& F, const Rational& x, const Rational& h, unsigned r,
                const Rational& max_width = default_max_width());

ProbeSeries omega_series(const Primitive& F, const Rational& x, const std::vector<Rational>& h_list, unsigned r,
                         const Rational& max_width = default_max_width());

enum class AlphaMethod { Auto, ClosedForm, Search };

struct DerivativeReading {
  Rational h;
  Rational alpha;
  Enclosure residual;  // ((1/h) * integral over [-h,h] of |F(x+t) - F(x) - alpha t|^r dt)^(1/r)
};

struct DerivativeStudy {
  std::vector<DerivativeReading> rows;
  /// True when residual/h provably decreases along the rows (or every residual is 0).
  bool little_o;
};

/// Closed-form projection for r = 2 (Auto), ternary search on the convex objective otherwise.
DerivativeStudy lr_derivative_estimate(const Primitive& F, const Rational& x, unsigned r,
                                       const std::vector<Rational>& h_list, AlphaMethod method = AlphaMethod::Auto,
                                       const Rational& max_width = default_max_width());

/// Approximations of S_x(h) = {t in <0,h> : |F(x+t) - F(x)| <= omega_x(h)}, in t coordinates.
struct SSet {
  IntervalUnion inner;
  IntervalUnion outer;
  Enclosure threshold;
};
SSet s_set(const Primitive& F, const Rational& x, const Rational& h, unsigned r,
           const Rational& max_width = default_max_width());

/// measure(u intersect [0, k]) / k for each k.
std::vector<Rational> density_at_zero(const IntervalUnion& u, const std::vector<Rational>& k_list);

}  // namespace lrgauge::lr
