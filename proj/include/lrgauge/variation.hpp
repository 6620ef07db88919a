#pragma once

#include <optional>
#include <string>

#include "lrgauge/functions.hpp"
#include "lrgauge/partitions.hpp"

namespace lrgauge::variation {

struct RankParams {
  std::size_t n;
  std::size_t l;
};

/// Certified lower bound on a (delta, r)-variation sum with its witnessing division.
struct VariationReport {
  Division division;
  unsigned r = 1;
  Enclosure sum;
  Enclosure bound;  // (2^l - 1) / (4^(1/r) (n + l)); irrational for r > 2, hence an enclosure
  std::string gauge_descr;
  std::optional<RankParams> params;

  static std::string csv_header();
  /// n,l,r,k_count,sum_lo,sum_hi,bound,gauge
  std::string csv_row() const;
};

/// Sum of delta_r over the items of d. Total width <= max_width.
Enclosure var_sum(const Primitive& F, const Division& d, unsigned r, const Rational& max_width = default_max_width());

/// 1 / (4^(1/r) (n + l)), the per-term floor.
Enclosure term_bound(std::size_t n, std::size_t l, unsigned r);
/// (2^l - 1) / (4^(1/r) (n + l)).
Enclosure division_bound(std::size_t n, std::size_t l, unsigned r);

/// Smallest rank n with some rank-n address a where 2 * 3^-(n+1) < inf of g on a.
struct WorkableRank {
  std::size_t n;
  cantor::Address address;
};
WorkableRank minimal_workable_rank(const Gauge& g, std::size_t max_rank = 40);

/// Tagged intervals ([x_k, beta_k], x_k) over the gaps of decompose(a, l) for a rank-n address a,
/// with Cantor tags x_k in the left-adjoining segment. Throws BadRank or TagSearchFailed.
Division adversarial_division(const CounterexampleF& F, const Gauge& g, std::size_t n, std::size_t l);

/// Adversarial division plus its certified sum; enforces sum.lo > division_bound.
VariationReport adversarial_report(const CounterexampleF& F, const Gauge& g, std::size_t n, std::size_t l, unsigned r,
                                   const Rational& max_width = default_max_width());

/// Raises l at the minimal workable rank until the certified sum reaches target. Throws Unreachable.
VariationReport variation_search(const CounterexampleF& F, const Gauge& g, unsigned r, const Rational& target,
                                 std::size_t l_max, const Rational& max_width = default_max_width());

/// Sum of |F(right) - F(left)| over the items; tags play no role.
Enclosure varap_sum(const Primitive& F, const Division& d);

/// Both endpoints in s_inner (absolute coordinates); the tag itself always counts as a member.
bool sfine_check(const TaggedInterval& ti, const IntervalUnion& s_inner);

}  // namespace lrgauge::variation
