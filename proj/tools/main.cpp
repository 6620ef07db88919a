// lrgauge: tables for the Cantor counterexample, variation sums and L^r probes.
// Exit status: 0 all checks certified, 2 some check failed to certify, 1 usage error.
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "lrgauge/cantor.hpp"
#include "lrgauge/error.hpp"
#include "lrgauge/functions.hpp"
#include "lrgauge/hkr.hpp"
#include "lrgauge/lr_analysis.hpp"
#include "lrgauge/partitions.hpp"
#include "lrgauge/variation.hpp"
#include "table.hpp"

using namespace lrgauge;
using lrcli::cell;
using lrcli::Cell;
using lrcli::Table;
using lrcli::verdict;

namespace {

struct Options {
  std::size_t n = 0;
  bool n_set = false;
  std::size_t n_max = 8;
  std::size_t l = 3;
  std::size_t l_max = 16;
  std::size_t table_rank_max = 6;
  std::size_t table_l_max = 5;
  std::size_t density_j_max = 9;
  unsigned r = 1;
  std::string gauge = "const:1/5";
  std::string target;
  std::string pair = "main";
  std::string delta;
  std::string x = "0";
  std::string h_list;
  std::string format = "csv";
  std::string max_width;
  std::optional<std::uint64_t> seed;
  bool approx = false;
};

std::vector<Rational> parse_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(Rational::parse(item));
  if (out.empty()) throw Error(ErrorKind::Parse, "empty list '" + csv + "'");
  return out;
}

Rational width_of(const Options& o) { return o.max_width.empty() ? default_max_width() : Rational::parse(o.max_width); }

const CounterexampleF& need_counterexample(const hkr::CandidatePair& p) {
  if (!p.counterexample()) throw Error(ErrorKind::InvalidArgument, "pair '" + p.name + "' is not a Cantor counterexample");
  return *p.counterexample();
}

Table eq1(const Options& o) {
  Table t({"n", "r", "v_n_integral", "u_n_integral", "check"});
  CounterexampleF F = CounterexampleF::main();
  for (unsigned n = 1; n <= o.n_max; ++n) {
    cantor::Address chain(std::string(n - 1, 'L'));
    Rational v = vn_integral_exact(n, o.r);
    Enclosure u = integrate_abs_pow(F, cantor::contiguous_interval(chain), AffineReference{}, o.r, width_of(o));
    t.add({cell(n), cell(o.r), cell(v), cell(u), verdict(u.lo() > v)});
  }
  return t;
}

Table deltar(const Options& o) {
  hkr::CandidatePair p = hkr::CandidatePair::from_name(o.pair);
  const CounterexampleF& F = need_counterexample(p);
  Gauge g = Gauge::from_spec(o.gauge);
  std::size_t n = o.n_set ? o.n : variation::minimal_workable_rank(g).n;
  Division d = variation::adversarial_division(F, g, n, o.l);
  Enclosure floor = variation::term_bound(n, o.l, o.r);
  Table t({"k", "left", "right", "tag", "delta_r", "term_bound", "check"});
  for (std::size_t k = 0; k < d.items.size(); ++k) {
    const TaggedInterval& ti = d.items[k];
    Enclosure dr = lr::delta_r(F, ti, o.r, width_of(o));
    t.add({cell(k + 1), cell(ti.seg().left()), cell(ti.seg().right()), cell(ti.tag()), cell(dr), cell(floor),
           verdict(dr.lo() > floor.hi())});
  }
  return t;
}

Table variation_cmd(const Options& o) {
  hkr::CandidatePair p = hkr::CandidatePair::from_name(o.pair);
  const CounterexampleF& F = need_counterexample(p);
  Gauge g = Gauge::from_spec(o.gauge);
  std::optional<Rational> target;
  if (!o.target.empty()) target = Rational::parse(o.target);
  variation::VariationReport rep;
  if (target) {
    rep = variation::variation_search(F, g, o.r, *target, o.l_max, width_of(o));
  } else {
    std::size_t n = o.n_set ? o.n : variation::minimal_workable_rank(g).n;
    rep = variation::adversarial_report(F, g, n, o.l, o.r, width_of(o));
  }
  bool ok = rep.sum.lo() > rep.bound.hi() && (!target || rep.sum.lo() >= *target);
  Table t({"n", "l", "r", "k_count", "sum_lo", "sum_hi", "bound", "gauge", "check"});
  t.add({cell(rep.params->n), cell(rep.params->l), cell(rep.r), cell(rep.division.items.size()), cell(rep.sum.lo()),
         cell(rep.sum.hi()), cell(rep.bound), cell(rep.gauge_descr), verdict(ok)});
  return t;
}

Table hkr_sum_cmd(const Options& o) {
  if (o.delta.empty()) throw Error(ErrorKind::InvalidArgument, "hkr-sum needs --delta");
  hkr::CandidatePair p = hkr::CandidatePair::from_name(o.pair);
  Rational delta = Rational::parse(o.delta);
  Division d = hkr::cousin_for(p, delta);
  Enclosure s = hkr::hkr_sum(p, d, o.r, width_of(o));
  Table t({"pair", "delta", "r", "items", "sum", "envelope", "check"});
  if (p.counterexample()) {
    // no envelope is claimed for the counterexample pairs
    t.add({cell(p.name), cell(delta), cell(o.r), cell(d.items.size()), cell(s), cell("-"), cell("-")});
  } else {
    Rational env = Rational(2) * delta;
    t.add({cell(p.name), cell(delta), cell(o.r), cell(d.items.size()), cell(s), cell(env), verdict(s.hi() <= env)});
  }
  return t;
}

Table hkr_study_cmd(const Options& o) {
  hkr::CandidatePair p = hkr::CandidatePair::from_name(o.pair);
  std::vector<Rational> deltas = parse_list(o.delta.empty() ? "1/10,1/100,1/1000" : o.delta);
  Rational target = o.target.empty() ? Rational(100) : Rational::parse(o.target);
  hkr::Study s = hkr::hkr_refinement_study(p, deltas, o.r, target, o.l_max, width_of(o));
  Table t({"delta", "sum_lo", "sum_hi", "verdict", "witness_l", "check"});
  for (const auto& row : s.rows)
    t.add({cell(row.delta), cell(row.sum.lo()), cell(row.sum.hi()), cell(row.verdict),
           row.witness ? cell(row.witness->params->l) : cell("-"), verdict(row.verdict != "inconclusive")});
  return t;
}

Table lr_probe(const Options& o) {
  hkr::CandidatePair p = hkr::CandidatePair::from_name(o.pair);
  Rational x = Rational::parse(o.x);
  std::vector<Rational> hs = parse_list(o.h_list.empty() ? "1/3,1/9,1/27,1/81" : o.h_list);
  const Segment dom = domain_of(p.F);
  const Rational w = width_of(o);
  Table t({"h", "omega_right", "omega_left", "alpha", "residual", "check"});
  std::optional<Enclosure> prev_right, prev_left;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const Rational& h = hs[i];
    if (h.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "--h-list entries must be positive");
    if (i > 0 && !(h < hs[i - 1])) throw Error(ErrorKind::InvalidArgument, "--h-list must strictly decrease");
    std::optional<Enclosure> right, left;
    if (dom.contains(x + h)) right = lr::omega(p.F, x, h, o.r, w);
    if (dom.contains(x - h)) left = lr::omega(p.F, x, -h, o.r, w);
    if (!right && !left) throw Error(ErrorKind::OutOfDomain, "no side of x fits h = " + h.str());
    // L^r-continuity shows as omega shrinking with h on each available side
    bool ok = true;
    if (right && prev_right) ok = ok && right->hi() <= prev_right->lo();
    if (left && prev_left) ok = ok && left->hi() <= prev_left->lo();
    Cell alpha = cell("-"), residual = cell("-");
    if (right && left) {
      try {
        auto st = lr::lr_derivative_estimate(p.F, x, o.r, {h}, lr::AlphaMethod::Auto, w);
        alpha = cell(st.rows[0].alpha);
        residual = cell(st.rows[0].residual);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::WidthUnachievable) throw;
        alpha = residual = cell("unavailable");
      }
    }
    t.add({cell(h), right ? cell(*right) : cell("-"), left ? cell(*left) : cell("-"), alpha, residual,
           i == 0 ? cell("-") : verdict(ok)});
    prev_right = right;
    prev_left = left;
  }
  return t;
}

Table density(const Options& o) {
  hkr::CandidatePair p = hkr::CandidatePair::from_name(o.pair);
  Rational x = Rational::parse(o.x);
  std::vector<Rational> hs = parse_list(o.h_list.empty() ? "1/27" : o.h_list);
  Table t({"x", "h", "k", "density", "check"});
  for (const auto& h : hs) {
    lr::SSet s = lr::s_set(p.F, x, h, o.r, width_of(o));
    IntervalUnion side = h.sign() > 0 ? s.inner : s.inner.reflected();
    std::vector<Rational> ks;
    for (std::size_t j = 1; j <= o.density_j_max; ++j)
      if (Rational::inverse_power(3, j) <= h.abs()) ks.push_back(Rational::inverse_power(3, j));
    auto dens = lr::density_at_zero(side, ks);
    for (std::size_t i = 0; i < ks.size(); ++i)
      t.add({cell(x), cell(h), cell(ks[i]), cell(dens[i]), i == 0 ? cell("-") : verdict(dens[i] >= dens[i - 1])});
  }
  return t;
}

Table cantor_table(const Options& o) {
  Table t({"rank", "l", "addresses", "segments", "gaps", "measure", "check"});
  std::mt19937_64 rng(o.seed.value_or(0));
  for (std::size_t rank = 0; rank <= o.table_rank_max; ++rank) {
    // exhaustive unless --seed asks for 64 sampled addresses per rank
    std::vector<cantor::Address> addrs;
    const unsigned long long total = 1ULL << rank;
    if (o.seed && total > 64) {
      std::set<unsigned long long> picked;
      while (picked.size() < 64) picked.insert(rng() % total);
      for (auto i : picked) addrs.push_back(cantor::Address().extension(rank, i));
    } else {
      for (unsigned long long i = 0; i < total; ++i) addrs.push_back(cantor::Address().extension(rank, i));
    }
    for (std::size_t l = 0; l <= o.table_l_max; ++l) {
      bool ok = true;
      for (const auto& a : addrs) {
        cantor::Decomposition d = cantor::decompose(a, l);
        ok = ok && d.segments.size() == (std::size_t{1} << l) && d.gaps.size() == (std::size_t{1} << l) - 1;
        Rational m = Rational::power(2, l) * cantor::rank_length(rank + l);
        for (const auto& g : d.gaps) m += g.interval.length();
        ok = ok && m == cantor::rank_length(rank);
      }
      t.add({cell(rank), cell(l), cell(addrs.size()), cell(std::size_t{1} << l), cell((std::size_t{1} << l) - 1),
             cell(cantor::rank_length(rank)), verdict(ok)});
    }
  }
  return t;
}

bool usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::OutOfDomain:
    case ErrorKind::ZeroLength:
    case ErrorKind::BadRank:
    case ErrorKind::IndexOutOfRange:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge sums and L^r probes for the Cantor counterexample"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  std::uint64_t seed = 0;

  app.add_option("--format", o.format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  app.add_flag("--approx", o.approx, "add decimal columns next to exact ones");
  app.add_option("--max-width", o.max_width, "enclosure width target (rational)");

  auto ranked = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "rank of the host segment (default: minimal workable)");
    sub->add_option("--l", o.l, "decomposition depth")->check(CLI::Range(std::size_t{1}, std::size_t{40}));
    sub->add_option("--gauge", o.gauge, "const:RAT | pwc:FILE | rank:FILE");
  };
  auto with_r = [&](CLI::App* sub) { sub->add_option("--r", o.r, "exponent r >= 1")->check(CLI::Range(1U, 64U)); };
  auto with_pair = [&](CLI::App* sub) {
    sub->add_option("--pair", o.pair)->check(CLI::IsMember({"smooth", "zero", "main", "thin", "remark-e"}));
  };

  auto* eq1_cmd = app.add_subcommand("eq1", "plateau integral against the whole gap, n = 1..n-max");
  eq1_cmd->add_option("--n-max", o.n_max)->check(CLI::Range(1, 40));
  with_r(eq1_cmd);

  auto* deltar_cmd = app.add_subcommand("deltar", "per-item Delta_r of the constructed division against its floor");
  ranked(deltar_cmd);
  with_r(deltar_cmd);
  with_pair(deltar_cmd);

  auto* var_cmd = app.add_subcommand("variation", "certified variation sum, fixed l or searched to --target");
  ranked(var_cmd);
  with_r(var_cmd);
  with_pair(var_cmd);
  var_cmd->add_option("--target", o.target, "search l until the certified sum reaches this");
  var_cmd->add_option("--l-max", o.l_max);

  auto* hsum_cmd = app.add_subcommand("hkr-sum", "Riemann-type sum over the cousin division of Constant(delta)");
  with_pair(hsum_cmd);
  with_r(hsum_cmd);
  hsum_cmd->add_option("--delta", o.delta)->required();

  auto* hstudy_cmd = app.add_subcommand("hkr-study", "sums along a decreasing list of constant gauges");
  with_pair(hstudy_cmd);
  with_r(hstudy_cmd);
  hstudy_cmd->add_option("--delta", o.delta, "comma-separated, strictly decreasing");
  hstudy_cmd->add_option("--target", o.target);
  hstudy_cmd->add_option("--l-max", o.l_max);

  auto* probe_cmd = app.add_subcommand("lr-probe", "omega on both sides and the L^r derivative, per h");
  with_pair(probe_cmd);
  with_r(probe_cmd);
  probe_cmd->add_option("--x", o.x);
  probe_cmd->add_option("--h-list", o.h_list, "comma-separated, strictly decreasing");

  auto* dens_cmd = app.add_subcommand("density", "density at 0 of the inner S-set, k = 3^-j");
  with_pair(dens_cmd);
  with_r(dens_cmd);
  dens_cmd->add_option("--x", o.x);
  dens_cmd->add_option("--h-list", o.h_list, "signed h values");
  dens_cmd->add_option("--n-max", o.density_j_max, "deepest j")->check(CLI::Range(1, 60));

  auto* table_cmd = app.add_subcommand("cantor-table", "decomposition counts and measure identity per rank and l");
  table_cmd->add_option("--n-max", o.table_rank_max, "deepest rank")->check(CLI::Range(0, 40));
  table_cmd->add_option("--l-max", o.table_l_max)->check(CLI::Range(0, 20));
  auto* seed_opt = table_cmd->add_option("--seed", seed, "sample 64 addresses per rank instead of all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (auto* sub : {deltar_cmd, var_cmd})
    if (sub->parsed() && sub->count("--n") > 0) o.n_set = true;
  if (seed_opt->count() > 0) o.seed = seed;

  try {
    Table t = eq1_cmd->parsed()      ? eq1(o)
              : deltar_cmd->parsed() ? deltar(o)
              : var_cmd->parsed()    ? variation_cmd(o)
              : hsum_cmd->parsed()   ? hkr_sum_cmd(o)
              : hstudy_cmd->parsed() ? hkr_study_cmd(o)
              : probe_cmd->parsed()  ? lr_probe(o)
              : dens_cmd->parsed()   ? density(o)
                                     : cantor_table(o);
    t.print(std::cout, o.format == "md", o.approx);
    return t.all_certified() ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "lrgauge: " << e.what() << '\n';
    return usage_kind(e.kind()) ? 1 : 2;
  }
}
