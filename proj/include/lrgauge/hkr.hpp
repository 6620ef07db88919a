#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrgauge/functions.hpp"
#include "lrgauge/partitions.hpp"
#include "lrgauge/variation.hpp"

namespace lrgauge::hkr {

/// Integrand f with primitive candidate F. When f is absent, f = F' (the counterexample pairs).
struct CandidatePair {
  std::string name;
  Primitive F;
  std::optional<PiecewisePolynomial> f;

  /// (2y, y^2) on [0, 1].
  static CandidatePair smooth();
  static CandidatePair zero();
  static CandidatePair main(std::size_t cutoff_depth = CounterexampleF::kDefaultCutoff);
  static CandidatePair thin(std::size_t cutoff_depth = CounterexampleF::kDefaultCutoff);
  /// "smooth", "zero", "main" or "thin" ("remark-e" is accepted as an alias). Throws Parse.
  static CandidatePair from_name(const std::string& name);

  Rational f_at(const Rational& x) const;
  const CounterexampleF* counterexample() const { return std::get_if<CounterexampleF>(&F); }
};

/// Sum over d of ((1/|I|) * integral over I of |F(y) - F(x) - f(x)(y - x)|^r dy)^(1/r).
Enclosure hkr_sum(const CandidatePair& p, const Division& d, unsigned r,
                  const Rational& max_width = default_max_width());

/// Cousin division of the pair's domain under Constant(delta).
Division cousin_for(const CandidatePair& p, const Rational& delta);

struct StudyRow {
  Rational delta;
  Enclosure sum;
  std::string verdict;
  std::optional<variation::VariationReport> witness;
};

struct Study {
  std::vector<StudyRow> rows;
  bool falsified = false;

  /// delta,sum_lo,sum_hi,verdict
  std::string to_csv() const;
};

/// For each delta (strictly decreasing), the sum over its cousin division. Counterexample
/// pairs are instead attacked with variation_search at `target` for the same constant gauge.
Study hkr_refinement_study(const CandidatePair& p, const std::vector<Rational>& deltas, unsigned r,
                           const Rational& target = Rational(100), std::size_t l_max = 16,
                           const Rational& max_width = default_max_width());

}  // namespace lrgauge::hkr
