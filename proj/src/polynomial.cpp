#include "lrgauge/polynomial.hpp"

#include <algorithm>

#include "lrgauge/error.hpp"

namespace lrgauge {

namespace {

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(mpq_class(out));
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(unsigned k) {
  std::vector<Rational> c(k + 1, Rational(0));
  c[k] = Rational(1);
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& y) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<Rational> a(c_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
  return Polynomial(std::move(a));
}

Rational Polynomial::integrate(const Rational& a, const Rational& b) const {
  Polynomial anti = antiderivative();
  return anti(b) - anti(a);
}

Polynomial Polynomial::compose_affine(const Rational& scale, const Rational& shift) const {
  // Horner in polynomial arithmetic: (((c_n) x + c_{n-1}) x + ...) with x = scale*y + shift.
  Polynomial x = affine(scale, shift);
  Polynomial acc;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * x;
    acc += constant(c_[i]);
  }
  return acc;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

std::vector<Rational> Polynomial::bernstein(const Rational& a, const Rational& b) const {
  if (c_.empty()) return {Rational(0)};
  Polynomial local = compose_affine(b - a, a);
  const unsigned n = static_cast<unsigned>(std::max(degree(), 0));
  std::vector<Rational> lc(n + 1, Rational(0));
  for (std::size_t i = 0; i < local.c_.size(); ++i) lc[i] = local.c_[i];
  std::vector<Rational> out(n + 1, Rational(0));
  for (unsigned j = 0; j <= n; ++j)
    for (unsigned i = 0; i <= j; ++i) out[j] += binomial(j, i) / binomial(n, i) * lc[i];
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return Polynomial();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(out));
}

namespace {

struct SignInfo {
  bool nonneg;
  bool nonpos;
  Rational max_abs;
};

SignInfo sign_info(const std::vector<Rational>& bern) {
  SignInfo s{true, true, Rational(0)};
  for (const auto& b : bern) {
    if (b.sign() < 0) s.nonneg = false;
    if (b.sign() > 0) s.nonpos = false;
    s.max_abs = max(s.max_abs, b.abs());
  }
  return s;
}

struct AbsPowIntegrator {
  const Polynomial& p;
  Polynomial anti_pow;  // antiderivative of p^r
  unsigned r;
  const Rational& leaf_tol;
  Rational lo{0};
  Rational hi{0};

  void run(const Rational& a, const Rational& b, unsigned depth) {
    SignInfo s = sign_info(p.bernstein(a, b));
    if (s.nonneg || s.nonpos) {
      Rational v = anti_pow(b) - anti_pow(a);
      if (!s.nonneg) v = -v;  // r odd here, so |p|^r = -p^r
      lo += v;
      hi += v;
      return;
    }
    Rational bound = (b - a) * s.max_abs.pow(r);
    if (bound <= leaf_tol || depth >= 400) {
      hi += bound;
      return;
    }
    Rational m = (a + b) / Rational(2);
    run(a, m, depth + 1);
    run(m, b, depth + 1);
  }
};

}  // namespace

Enclosure integrate_abs_pow(const Polynomial& p, const Segment& seg, unsigned r, const Rational& leaf_tol) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "power must be positive");
  if (p.is_zero()) return Enclosure(Rational(0));
  Polynomial anti = p.pow(r).antiderivative();
  if (r % 2 == 0) return Enclosure(anti(seg.right()) - anti(seg.left()));
  AbsPowIntegrator it{p, std::move(anti), r, leaf_tol};
  if (p.degree() == 1) {
    // Split exactly at the root so linear integrands stay exact.
    Rational root = -p.coeffs()[0] / p.coeffs()[1];
    if (seg.interior_contains(root)) {
      it.run(seg.left(), root, 0);
      it.run(root, seg.right(), 0);
      return Enclosure(it.lo, it.hi);
    }
  }
  it.run(seg.left(), seg.right(), 0);
  return Enclosure(it.lo, it.hi);
}

Rational sup_abs_bound(const Polynomial& p, const Segment& seg) {
  return sign_info(p.bernstein(seg.left(), seg.right())).max_abs;
}

void classify_sublevel(const Polynomial& q, const Segment& seg, const Rational& w_inner, const Rational& w_outer,
                       const Rational& tol, LevelParts& out) {
  auto bern = q.bernstein(seg.left(), seg.right());
  auto [mn, mx] = std::minmax_element(bern.begin(), bern.end());
  if (*mx <= w_inner && -w_inner <= *mn) {
    out.inner.push_back(seg);
    out.outer.push_back(seg);
    return;
  }
  if (*mn > w_outer || *mx < -w_outer) return;
  if (seg.length() <= tol) {
    out.outer.push_back(seg);
    return;
  }
  Rational m = seg.center();
  classify_sublevel(q, Segment(seg.left(), m), w_inner, w_outer, tol, out);
  classify_sublevel(q, Segment(m, seg.right()), w_inner, w_outer, tol, out);
}

}  // namespace lrgauge
