#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lrgauge/segment.hpp"

namespace lrgauge::cantor {

/// Finite word over {L, R} naming a rank segment of the ternary Cantor set.
/// The empty word is [0, 1]; L keeps the left closed third, R the right one.
class Address {
 public:
  Address() = default;
  /// Throws Parse on characters other than 'L' and 'R'.
  explicit Address(std::string word);

  const std::string& word() const { return word_; }
  std::size_t rank() const { return word_.size(); }

  Address child(char side) const;
  bool has_prefix(const Address& prefix) const;

  /// The i-th of the 2^depth extensions of this address, in lexicographic order.
  Address extension(std::size_t depth, unsigned long long index) const;

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;

 private:
  std::string word_;
};

/// Length 3^-rank.
Rational rank_length(std::size_t rank);

Segment rank_segment(const Address& a);

/// Closure of the removed middle third of rank_segment(a); its rank is rank(a) + 1.
Segment contiguous_interval(const Address& a);

/// Closed segment concentric with contiguous_interval(a), half its length.
Segment v_interval(const Address& a);

struct Gap {
  Segment interval;  // closure of the open contiguous interval
  std::size_t rank;
};

struct Decomposition {
  std::vector<Address> segments;  // 2^l extensions, left to right
  std::vector<Gap> gaps;          // 2^l - 1 contiguous intervals, left to right
};

/// Tiles rank_segment(a) by its rank-(rank(a)+l) segments and the contiguous
/// intervals of ranks rank(a)+1 .. rank(a)+l lying between them.
Decomposition decompose(const Address& a, std::size_t l);

/// Address of the rank-(rank(a)+l) segment whose right endpoint is the left
/// endpoint of gap `gap_index` of decompose(a, l). Throws IndexOutOfRange.
Address left_adjoining_segment(const Address& a, std::size_t l, unsigned long long gap_index);

/// Exact membership test for 0 <= x <= 1 via the ternary digit recurrence. Throws OutOfDomain.
bool in_cantor(const Rational& x);

/// Longest address (up to max_rank) whose rank segment contains x, for 0 <= x <= 1.
Address address_prefix(const Rational& x, std::size_t max_rank);

/// Where a point of [0,1] sits relative to the construction, resolved to max_rank.
struct Location {
  enum class Kind { Cantor, Gap, Unresolved } kind;
  Address parent;  // for Gap: the rank segment whose middle third holds x
};
Location locate(const Rational& x, std::size_t max_rank);

}  // namespace lrgauge::cantor
