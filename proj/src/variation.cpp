#include "lrgauge/variation.hpp"

#include <sstream>

#include "detail/parallel_map.hpp"
#include "lrgauge/error.hpp"
#include "lrgauge/lr_analysis.hpp"

namespace lrgauge::variation {

namespace {

constexpr std::size_t kAddressCap = std::size_t{1} << 16;
constexpr std::size_t kTagDepth = 10;

Enclosure sum_terms(const std::vector<Enclosure>& terms) {
  Enclosure total(Rational(0));
  for (const auto& t : terms) total += t;
  return total;
}

Enclosure fourth_root_power(unsigned r) {
  return root_enclosure(Enclosure(Rational(4)), r, Rational::inverse_power(2, 96));
}

// 1/e for a positive enclosure e.
Enclosure reciprocal(const Enclosure& e) {
  return Enclosure(Rational(1) / e.hi(), Rational(1) / e.lo());
}

std::size_t count_addresses(std::size_t n) {
  return n >= 16 ? kAddressCap : std::min(kAddressCap, std::size_t{1} << n);
}

// Cantor endpoints inside rank_segment(s) at depth kTagDepth, from right to left; alpha first.
std::optional<Rational> find_tag(const Gauge& g, const cantor::Address& s, const Rational& beta) {
  const Rational alpha = cantor::rank_segment(s).right();
  if (gauge_at(g, alpha) > beta - alpha) return alpha;
  const unsigned long long count = 1ULL << kTagDepth;
  for (unsigned long long i = count; i-- > 0;) {
    Segment piece = cantor::rank_segment(s.extension(kTagDepth, i));
    for (const Rational* x : {&piece.right(), &piece.left()}) {
      if (*x == alpha) continue;
      if (gauge_at(g, *x) > beta - *x) return *x;
    }
  }
  return std::nullopt;
}

std::optional<Division> build_for(const cantor::Address& a, const Gauge& g, std::size_t l) {
  cantor::Decomposition dec = cantor::decompose(a, l);
  Division d;
  d.items.reserve(dec.gaps.size());
  for (std::size_t k = 0; k < dec.gaps.size(); ++k) {
    const Rational& beta = dec.gaps[k].interval.right();
    auto tag = find_tag(g, dec.segments[k], beta);
    if (!tag) return std::nullopt;
    d.items.emplace_back(Segment(*tag, beta), *tag);
  }
  return d;
}

}  // namespace

std::string VariationReport::csv_header() { return "n,l,r,k_count,sum_lo,sum_hi,bound,gauge"; }

std::string VariationReport::csv_row() const {
  std::ostringstream out;
  if (params)
    out << params->n << ',' << params->l;
  else
    out << ',';
  out << ',' << r << ',' << division.items.size() << ',' << sum.lo() << ',' << sum.hi() << ','
      << (bound.is_exact() ? bound.lo().str() : bound.str()) << ',' << gauge_descr;
  return out.str();
}

Enclosure var_sum(const Primitive& F, const Division& d, unsigned r, const Rational& max_width) {
  if (d.items.empty()) return Enclosure(Rational(0));
  const Rational per_term = max_width / Rational(static_cast<long>(d.items.size()));
  return sum_terms(detail::parallel_map<Enclosure>(
      d.items.size(), [&](std::size_t i) { return lr::delta_r(F, d.items[i], r, per_term); }));
}

Enclosure term_bound(std::size_t n, std::size_t l, unsigned r) {
  return reciprocal(fourth_root_power(r)) / Rational(static_cast<long>(n + l));
}

Enclosure division_bound(std::size_t n, std::size_t l, unsigned r) {
  Rational count = Rational::power(2, l) - Rational(1);
  Enclosure t = term_bound(n, l, r);
  return Enclosure(t.lo() * count, t.hi() * count);
}

WorkableRank minimal_workable_rank(const Gauge& g, std::size_t max_rank) {
  for (std::size_t n = 0; n <= max_rank; ++n) {
    const Rational need = Rational(2) * Rational::inverse_power(3, n + 1);
    const std::size_t count = count_addresses(n);
    for (std::size_t i = 0; i < count; ++i) {
      cantor::Address a = cantor::Address().extension(n, i);
      if (need < gauge_inf_on_rank_segment(g, a)) return {n, a};
    }
  }
  throw Error(ErrorKind::BadRank, "no workable rank up to " + std::to_string(max_rank));
}

Division adversarial_division(const CounterexampleF& F, const Gauge& g, std::size_t n, std::size_t l) {
  if (l == 0) throw Error(ErrorKind::InvalidArgument, "l must be positive");
  if (n + l > F.cutoff_depth() || n + l + kTagDepth > 62)
    throw Error(ErrorKind::BadRank, "n + l = " + std::to_string(n + l) + " exceeds the supported depth");
  const Rational need = Rational(2) * Rational::inverse_power(3, n + 1);
  const std::size_t count = count_addresses(n);
  // Workable addresses first; any address where every tag is found still qualifies.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < count; ++i) {
      cantor::Address a = cantor::Address().extension(n, i);
      bool workable = need < gauge_inf_on_rank_segment(g, a);
      if (workable != (pass == 0)) continue;
      if (auto d = build_for(a, g, l)) return *d;
    }
  }
  throw Error(ErrorKind::TagSearchFailed, "no rank-" + std::to_string(n) + " address admits fine Cantor tags");
}

VariationReport adversarial_report(const CounterexampleF& F, const Gauge& g, std::size_t n, std::size_t l, unsigned r,
                                   const Rational& max_width) {
  VariationReport rep;
  rep.division = adversarial_division(F, g, n, l);
  rep.r = r;
  rep.sum = var_sum(F, rep.division, r, max_width);
  rep.bound = division_bound(n, l, r);
  rep.gauge_descr = g.describe();
  rep.params = RankParams{n, l};
  if (!(rep.sum.lo() > rep.bound.hi()))
    throw Error(ErrorKind::WidthUnachievable, "certified sum does not clear the closed-form bound at l = " +
                                                  std::to_string(l));
  return rep;
}

VariationReport variation_search(const CounterexampleF& F, const Gauge& g, unsigned r, const Rational& target,
                                 std::size_t l_max, const Rational& max_width) {
  if (target.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "target must be positive");
  const std::size_t n = minimal_workable_rank(g).n;
  for (std::size_t l = 1; l <= l_max; ++l) {
    VariationReport rep = adversarial_report(F, g, n, l, r, max_width);
    if (rep.sum.lo() >= target) return rep;
  }
  throw Error(ErrorKind::Unreachable, "target " + target.str() + " not certified by l = " + std::to_string(l_max));
}

Enclosure varap_sum(const Primitive& F, const Division& d) {
  Enclosure total(Rational(0));
  for (const auto& ti : d.items)
    total += (value_at(F, ti.seg().right()) - value_at(F, ti.seg().left())).abs();
  return total;
}

bool sfine_check(const TaggedInterval& ti, const IntervalUnion& s_inner) {
  auto member = [&](const Rational& p) { return p == ti.tag() || s_inner.contains(p); };
  return member(ti.seg().left()) && member(ti.seg().right());
}

}  // namespace lrgauge::variation
