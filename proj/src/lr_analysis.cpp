#include "lrgauge/lr_analysis.hpp"

#include <sstream>

#include "lrgauge/error.hpp"

namespace lrgauge::lr {

std::string ProbeSeries::to_csv() const {
  std::ostringstream out;
  out << "h,reading_lo,reading_hi\n";
  for (std::size_t i = 0; i < h.size(); ++i) out << h[i] << ',' << readings[i].lo() << ',' << readings[i].hi() << '\n';
  return out.str();
}

Enclosure delta_r(const Primitive& F, const TaggedInterval& ti, unsigned r, const Rational& max_width) {
  const Rational len = ti.seg().length();
  const Rational c = exact_value_at(F, ti.tag());
  Enclosure integral = integrate_abs_pow(F, ti.seg(), AffineReference{c, Rational(0), ti.tag()}, r, max_width * len);
  return root_enclosure(integral / len, r, max_width);
}

Enclosure omega(const Primitive& F, const Rational& x, const Rational& h, unsigned r, const Rational& max_width) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroLength, "omega needs h != 0");
  return delta_r(F, TaggedInterval(Segment::between(x, x + h), x), r, max_width);
}

ProbeSeries omega_series(const Primitive& F, const Rational& x, const std::vector<Rational>& h_list, unsigned r,
                         const Rational& max_width) {
  ProbeSeries out;
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    if (i > 0 && !(h_list[i].abs() < h_list[i - 1].abs()))
      throw Error(ErrorKind::InvalidArgument, "h values must strictly decrease in magnitude");
    out.h.push_back(h_list[i]);
    out.readings.push_back(omega(F, x, h_list[i], r, max_width));
  }
  return out;
}

namespace {

class Objective {
 public:
  Objective(const Primitive& F, const Rational& x, const Rational& h, unsigned r, const Rational& max_width)
      : F_(F), x_(x), h_(h), r_(r), max_width_(max_width), window_(x - h, x + h), c_(exact_value_at(F, x)) {
    // Near its minimum the objective moves like h^(r+2) (alpha - alpha*)^2, far below max_width * h
    // for small h. Polynomials integrate cheaply to any width, so search on those at a much finer one.
    search_width_ = std::holds_alternative<PiecewisePolynomial>(F)
                        ? max_width * max_width * h.pow(r + 2)
                        : max_width * h;
  }

  Enclosure integral(const Rational& alpha) const {
    return integrate_abs_pow(F_, window_, AffineReference{c_, alpha, x_}, r_, max_width_ * h_);
  }

  Enclosure search_integral(const Rational& alpha) const {
    return integrate_abs_pow(F_, window_, AffineReference{c_, alpha, x_}, r_, search_width_);
  }

  Enclosure operator()(const Rational& alpha) const { return root_enclosure(integral(alpha) / h_, r_, max_width_); }

  const Rational& center_value() const { return c_; }
  const Segment& window() const { return window_; }

 private:
  const Primitive& F_;
  const Rational& x_;
  const Rational& h_;
  unsigned r_;
  const Rational& max_width_;
  Segment window_;
  Rational c_;
  Rational search_width_;
};

Rational closed_form_alpha(const Objective& obj, const Rational& h) {
  // Q(s) = integral of (F - c - s t)^2 = A - 2 s B + s^2 C with C = 2h^3/3, so
  // B = (Q(0) - Q(1) + C) / 2 and the minimizer is B / C.
  const Rational c_term = Rational(2) * h.pow(3) / Rational(3);
  Enclosure b = (obj.integral(Rational(0)) - obj.integral(Rational(1)) + Enclosure(c_term)) / Rational(2);
  Enclosure alpha = b / c_term;
  return alpha.is_exact() ? alpha.lo() : round_down(alpha.mid(), 96);
}

Rational search_alpha(const Objective& obj, const Primitive& F, const Rational& h, unsigned r) {
  // Beyond |alpha| = 2(r+1) sup|F - c| / h + 1 the objective exceeds its value at alpha = 0.
  const Rational sup = sup_deviation_bound(F, obj.window(), obj.center_value());
  const Rational bound = Rational(2 * static_cast<long>(r + 1)) * sup / h + Rational(1);
  Rational lo = -bound;
  Rational hi = bound;
  const Rational tol = Rational::inverse_power(10, 12) * max(Rational(1), bound);
  const Rational three(3);
  while (hi - lo > tol) {
    Rational m1 = round_down(lo + (hi - lo) / three, 96);
    Rational m2 = round_up(hi - (hi - lo) / three, 96);
    if (obj.search_integral(m1).mid() <= obj.search_integral(m2).mid())
      hi = std::move(m2);
    else
      lo = std::move(m1);
  }
  // compare raw integrals: the root step would add its own rounding noise
  // Flat bottoms are common; prefer a short dyadic when it does at least as well.
  Rational best = round_down((lo + hi) / Rational(2), 96);
  Rational best_value = obj.search_integral(best).mid();
  std::vector<Rational> candidates;
  for (unsigned bits : {40U, 32U, 24U, 16U, 0U})
    candidates.push_back(round_down(best + Rational::inverse_power(2, bits + 1), bits));
  candidates.emplace_back(0);
  for (auto& cand : candidates) {
    Rational v = obj.search_integral(cand).mid();
    if (v <= best_value) {
      best = std::move(cand);
      best_value = std::move(v);
    }
  }
  return best;
}

}  // namespace

DerivativeStudy lr_derivative_estimate(const Primitive& F, const Rational& x, unsigned r,
                                       const std::vector<Rational>& h_list, AlphaMethod method,
                                       const Rational& max_width) {
  DerivativeStudy out;
  out.little_o = true;
  bool all_zero = true;
  for (const auto& h : h_list) {
    if (h.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "h must be positive");
    if (!domain_of(F).contains(Segment(x - h, x + h)))
      throw Error(ErrorKind::OutOfDomain, "[x-h, x+h] leaves the domain at h = " + h.str());
    Objective obj(F, x, h, r, max_width);
    Rational alpha(0);
    Enclosure at_zero = obj(alpha);
    if (!at_zero.hi().is_zero()) {
      bool closed = method == AlphaMethod::ClosedForm || (method == AlphaMethod::Auto && r == 2);
      if (closed && r != 2) throw Error(ErrorKind::InvalidArgument, "closed-form alpha needs r = 2");
      alpha = closed ? closed_form_alpha(obj, h) : search_alpha(obj, F, h, r);
    }
    Enclosure residual = alpha.is_zero() ? at_zero : obj(alpha);
    if (!residual.hi().is_zero()) all_zero = false;
    out.rows.push_back({h, alpha, residual});
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    Rational prev = out.rows[i - 1].residual.lo() / out.rows[i - 1].h;
    Rational cur = out.rows[i].residual.hi() / out.rows[i].h;
    if (!(cur < prev)) out.little_o = false;
  }
  if (all_zero) out.little_o = true;
  return out;
}

SSet s_set(const Primitive& F, const Rational& x, const Rational& h, unsigned r, const Rational& max_width) {
  Enclosure w = omega(F, x, h, r, max_width);
  const Rational c = exact_value_at(F, x);
  SublevelSet level = sublevel_set(F, Segment::between(x, x + h), c, w, max_width);
  return SSet{level.inner.translated(-x), level.outer.translated(-x), w};
}

std::vector<Rational> density_at_zero(const IntervalUnion& u, const std::vector<Rational>& k_list) {
  std::vector<Rational> out;
  out.reserve(k_list.size());
  for (const auto& k : k_list) {
    if (k.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "density scales must be positive");
    out.push_back(union_measure(u.intersect(Segment(Rational(0), k))) / k);
  }
  return out;
}

}  // namespace lrgauge::lr
