#include "lrgauge/cantor.hpp"

#include <set>

#include "lrgauge/error.hpp"

namespace lrgauge::cantor {

Address::Address(std::string word) : word_(std::move(word)) {
  for (char c : word_)
    if (c != 'L' && c != 'R') throw Error(ErrorKind::Parse, "address characters must be L or R: '" + word_ + "'");
}

Address Address::child(char side) const {
  Address out = *this;
  out.word_.push_back(side == 'R' ? 'R' : 'L');
  return out;
}

bool Address::has_prefix(const Address& prefix) const {
  return word_.size() >= prefix.word_.size() && word_.compare(0, prefix.word_.size(), prefix.word_) == 0;
}

Address Address::extension(std::size_t depth, unsigned long long index) const {
  Address out = *this;
  for (std::size_t i = depth; i-- > 0;) out.word_.push_back(((index >> i) & 1ULL) ? 'R' : 'L');
  return out;
}

Rational rank_length(std::size_t rank) { return Rational::inverse_power(3, rank); }

Segment rank_segment(const Address& a) {
  Rational left(0);
  Rational step(1);
  const Rational third(1, 3);
  for (char c : a.word()) {
    step *= third;
    if (c == 'R') left += step * Rational(2);
  }
  return Segment(left, left + step);
}

Segment contiguous_interval(const Address& a) {
  Segment s = rank_segment(a);
  Rational third = s.length() / Rational(3);
  return Segment(s.left() + third, s.left() + third * Rational(2));
}

Segment v_interval(const Address& a) {
  Segment u = contiguous_interval(a);
  Rational quarter = u.length() / Rational(4);
  return Segment(u.left() + quarter, u.right() - quarter);
}

namespace {

void decompose_into(const Address& a, std::size_t l, Decomposition& out) {
  if (l == 0) {
    out.segments.push_back(a);
    return;
  }
  decompose_into(a.child('L'), l - 1, out);
  out.gaps.push_back(Gap{contiguous_interval(a), a.rank() + 1});
  decompose_into(a.child('R'), l - 1, out);
}

}  // namespace

Decomposition decompose(const Address& a, std::size_t l) {
  if (l >= 63) throw Error(ErrorKind::InvalidArgument, "decomposition depth too large");
  Decomposition out;
  out.segments.reserve(std::size_t{1} << l);
  out.gaps.reserve((std::size_t{1} << l) - 1);
  decompose_into(a, l, out);
  return out;
}

Address left_adjoining_segment(const Address& a, std::size_t l, unsigned long long gap_index) {
  if (l == 0 || l >= 63 || gap_index >= (1ULL << l) - 1)
    throw Error(ErrorKind::IndexOutOfRange,
                "gap index " + std::to_string(gap_index) + " with l = " + std::to_string(l));
  return a.extension(l, gap_index);
}

bool in_cantor(const Rational& x) {
  if (x < Rational(0) || x > Rational(1)) throw Error(ErrorKind::OutOfDomain, "in_cantor at " + x.str());
  const Rational one(1);
  const Rational three(3);
  const Rational third(1, 3);
  std::set<Rational> seen;
  Rational y = x;
  for (;;) {
    if (y.is_zero() || y == one) return true;
    Rational t = y * three;
    mpz_class digit = t.floor();
    if (digit == 1) return y == third;  // 1/3 = 0.0222... in base 3
    y = t - Rational(mpq_class(digit));
    if (!seen.insert(y).second) return true;
  }
}

Address address_prefix(const Rational& x, std::size_t max_rank) {
  if (x < Rational(0) || x > Rational(1)) throw Error(ErrorKind::OutOfDomain, "address of " + x.str());
  std::string word;
  Rational left(0);
  Rational len(1);
  const Rational three(3);
  while (word.size() < max_rank) {
    len /= three;
    if (x <= left + len) {
      word.push_back('L');
    } else if (x >= left + len * Rational(2)) {
      word.push_back('R');
      left += len * Rational(2);
    } else {
      break;
    }
  }
  return Address(std::move(word));
}

Location locate(const Rational& x, std::size_t max_rank) {
  if (in_cantor(x)) return {Location::Kind::Cantor, Address()};
  Address a = address_prefix(x, max_rank);
  if (a.rank() == max_rank) {
    // x could still sit in the middle third of this deepest segment.
    Segment u = contiguous_interval(a);
    if (u.interior_contains(x)) return {Location::Kind::Gap, a};
    return {Location::Kind::Unresolved, a};
  }
  return {Location::Kind::Gap, a};
}

}  // namespace lrgauge::cantor
