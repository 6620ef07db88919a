#include "lrgauge/hkr.hpp"

#include <sstream>

#include "detail/parallel_map.hpp"
#include "lrgauge/error.hpp"

namespace lrgauge::hkr {

namespace {

const Segment kUnit(Rational(0), Rational(1));

constexpr const char* kConsistent = "consistent with integrability";
constexpr const char* kInconclusive = "inconclusive";

}  // namespace

CandidatePair CandidatePair::smooth() {
  return {"smooth", PiecewisePolynomial::square(kUnit),
          PiecewisePolynomial::polynomial("2y", Polynomial::affine(Rational(2), Rational(0)), kUnit)};
}

CandidatePair CandidatePair::zero() { return {"zero", PiecewisePolynomial::zero(kUnit), PiecewisePolynomial::zero(kUnit)}; }

CandidatePair CandidatePair::main(std::size_t cutoff_depth) {
  return {"main", CounterexampleF::main(cutoff_depth), std::nullopt};
}

CandidatePair CandidatePair::thin(std::size_t cutoff_depth) {
  return {"thin", CounterexampleF::thin(Rational(1, 4), cutoff_depth), std::nullopt};
}

CandidatePair CandidatePair::from_name(const std::string& name) {
  if (name == "smooth") return smooth();
  if (name == "zero") return zero();
  if (name == "main") return main();
  if (name == "thin" || name == "remark-e") return thin();
  throw Error(ErrorKind::Parse, "unknown pair '" + name + "'");
}

Rational CandidatePair::f_at(const Rational& x) const { return f ? f->value_at(x) : derivative_at(F, x); }

Enclosure hkr_sum(const CandidatePair& p, const Division& d, unsigned r, const Rational& max_width) {
  if (d.items.empty()) return Enclosure(Rational(0));
  const Rational per_term = max_width / Rational(static_cast<long>(d.items.size()));
  auto terms = detail::parallel_map<Enclosure>(d.items.size(), [&](std::size_t i) {
    const TaggedInterval& ti = d.items[i];
    const Rational len = ti.seg().length();
    AffineReference ref{exact_value_at(p.F, ti.tag()), p.f_at(ti.tag()), ti.tag()};
    Enclosure integral = integrate_abs_pow(p.F, ti.seg(), ref, r, per_term * len);
    return root_enclosure(integral / len, r, per_term);
  });
  Enclosure total(Rational(0));
  for (const auto& t : terms) total += t;
  return total;
}

Division cousin_for(const CandidatePair& p, const Rational& delta) {
  return cousin_division(domain_of(p.F), Gauge::constant(delta));
}

std::string Study::to_csv() const {
  std::ostringstream out;
  out << "delta,sum_lo,sum_hi,verdict\n";
  for (const auto& row : rows) out << row.delta << ',' << row.sum.lo() << ',' << row.sum.hi() << ',' << row.verdict << '\n';
  return out.str();
}

Study hkr_refinement_study(const CandidatePair& p, const std::vector<Rational>& deltas, unsigned r,
                           const Rational& target, std::size_t l_max, const Rational& max_width) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i].sign() <= 0) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw Error(ErrorKind::InvalidArgument, "deltas must strictly decrease");
  }
  Study study;
  if (const CounterexampleF* F = p.counterexample()) {
    for (const auto& delta : deltas) {
      variation::VariationReport rep = variation::variation_search(*F, Gauge::constant(delta), r, target, l_max, max_width);
      Enclosure sum = hkr_sum(p, rep.division, r, max_width);
      study.rows.push_back({delta, sum, "falsified at level " + target.str(), std::move(rep)});
    }
    study.falsified = !study.rows.empty();
    return study;
  }
  for (const auto& delta : deltas) {
    Enclosure sum = hkr_sum(p, cousin_for(p, delta), r, max_width);
    bool ok = study.rows.empty();
    if (!ok) {
      const Rational& prev = study.rows.back().sum.hi();
      ok = prev.is_zero() ? sum.hi().is_zero() : sum.hi() < prev;
    }
    study.rows.push_back({delta, sum, ok ? kConsistent : kInconclusive, std::nullopt});
  }
  return study;
}

}  // namespace lrgauge::hkr
