#include "lrgauge/interval_union.hpp"

#include <algorithm>

#include "lrgauge/error.hpp"

namespace lrgauge {

Segment::Segment(Rational left, Rational right) : left_(std::move(left)), right_(std::move(right)) {
  if (!(left_ < right_))
    throw Error(ErrorKind::InvalidArgument, "segment needs left < right, got [" + left_.str() + ", " + right_.str() + "]");
}

Segment Segment::between(const Rational& a, const Rational& b) {
  return a < b ? Segment(a, b) : Segment(b, a);
}

std::optional<Segment> Segment::intersect(const Segment& s) const {
  const Rational& l = max(left_, s.left_);
  const Rational& r = min(right_, s.right_);
  if (l < r) return Segment(l, r);
  return std::nullopt;
}

IntervalUnion::IntervalUnion(std::vector<Segment> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const Segment& a, const Segment& b) { return a.left() < b.left(); });
  for (auto& p : parts) {
    if (!parts_.empty() && p.left() <= parts_.back().right()) {
      if (parts_.back().right() < p.right()) parts_.back() = Segment(parts_.back().left(), p.right());
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

bool IntervalUnion::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Segment& s) { return v < s.left(); });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

IntervalUnion IntervalUnion::intersect(const Segment& s) const {
  std::vector<Segment> out;
  for (const auto& p : parts_)
    if (auto i = p.intersect(s)) out.push_back(*i);
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Segment> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::complement_in(const Segment& s) const {
  std::vector<Segment> out;
  Rational cursor = s.left();
  for (const auto& p : parts_) {
    if (p.right() <= s.left()) continue;
    if (p.left() >= s.right()) break;
    if (cursor < p.left()) out.emplace_back(cursor, p.left());
    cursor = max(cursor, p.right());
  }
  if (cursor < s.right()) out.emplace_back(cursor, s.right());
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::translated(const Rational& offset) const {
  std::vector<Segment> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.emplace_back(p.left() + offset, p.right() + offset);
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::reflected() const {
  std::vector<Segment> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.emplace_back(-p.right(), -p.left());
  return IntervalUnion(std::move(out));
}

Rational union_measure(const IntervalUnion& u) {
  Rational total(0);
  for (const auto& p : u.parts()) total += p.length();
  return total;
}

}  // namespace lrgauge
