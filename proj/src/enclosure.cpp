#include "lrgauge/enclosure.hpp"

#include "lrgauge/error.hpp"

namespace lrgauge {

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw Error(ErrorKind::InvalidArgument, "enclosure with lo > hi");
}

Enclosure Enclosure::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return -*this;
  return Enclosure(Rational(0), max(-lo_, hi_));
}

Enclosure Enclosure::pow(unsigned k) const {
  if (k == 0) return Enclosure(Rational(1));
  if (lo_.sign() >= 0) return Enclosure(lo_.pow(k), hi_.pow(k));
  if (hi_.sign() <= 0) {
    Enclosure m = (-*this).pow(k);
    return k % 2 == 0 ? m : -m;
  }
  if (k % 2 == 1) return Enclosure(lo_.pow(k), hi_.pow(k));
  return Enclosure(Rational(0), max(lo_.pow(k), hi_.pow(k)));
}

Enclosure Enclosure::operator/(const Rational& d) const {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  Rational a = lo_ / d;
  Rational b = hi_ / d;
  return d.sign() > 0 ? Enclosure(a, b) : Enclosure(b, a);
}

Enclosure Enclosure::rounded(unsigned bits) const {
  return Enclosure(round_down(lo_, bits), round_up(hi_, bits));
}

std::string Enclosure::str() const { return lo_.str() + ".." + hi_.str(); }

std::string Enclosure::decimal(int digits) const {
  return lo_.decimal(digits) + ".." + hi_.decimal(digits);
}

Enclosure& Enclosure::operator+=(const Enclosure& o) {
  lo_ += o.lo_;
  hi_ += o.hi_;
  return *this;
}

Enclosure& Enclosure::operator-=(const Enclosure& o) {
  Rational lo = lo_ - o.hi_;
  hi_ -= o.lo_;
  lo_ = std::move(lo);
  return *this;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (a.is_exact() && b.is_exact()) return Enclosure(a.lo_ * b.lo_);
  Rational p1 = a.lo_ * b.lo_;
  Rational p2 = a.lo_ * b.hi_;
  Rational p3 = a.hi_ * b.lo_;
  Rational p4 = a.hi_ * b.hi_;
  return Enclosure(min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4)));
}

Enclosure enclosure_arith(const Enclosure& a, const Enclosure& b, ArithOp op, unsigned exponent) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Pow:
      if (exponent == 0) throw Error(ErrorKind::InvalidArgument, "pow exponent must be positive");
      if (a.lo().sign() < 0) throw Error(ErrorKind::InvalidArgument, "pow base must be nonnegative");
      return a.pow(exponent);
  }
  return a;
}

namespace {

// Bracket [lo, hi] with lo^r <= target <= hi^r, shrunk until hi - lo <= width.
// Returns the exact root as a degenerate bracket when bisection lands on it.
std::pair<Rational, Rational> bracket_root(const Rational& target, unsigned r, const Rational& width) {
  Rational lo(0);
  Rational hi = max(Rational(1), Rational(mpq_class(target.ceil())));
  if (target.is_zero()) return {lo, lo};
  if (target == Rational(1)) return {Rational(1), Rational(1)};
  const Rational two(2);
  while (hi - lo > width) {
    Rational m = (lo + hi) / two;
    auto c = m.pow(r) <=> target;
    if (c == 0) return {m, m};
    if (c < 0)
      lo = std::move(m);
    else
      hi = std::move(m);
  }
  return {lo, hi};
}

}  // namespace

Enclosure root_enclosure(const Enclosure& x, unsigned r, const Rational& max_width) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "root order must be positive");
  if (x.lo().sign() < 0) throw Error(ErrorKind::NegativeRadicand, "radicand lower bound " + x.lo().str());
  if (max_width.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "max_width must be positive");
  if (r == 1) return x;
  Rational half = max_width / Rational(2);
  auto [lo_lo, lo_hi] = bracket_root(x.lo(), r, half);
  if (x.is_exact()) return Enclosure(lo_lo, lo_hi);
  auto [hi_lo, hi_hi] = bracket_root(x.hi(), r, half);
  return Enclosure(lo_lo, hi_hi);
}

}  // namespace lrgauge
