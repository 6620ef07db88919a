// Python surface: rationals cross as fractions.Fraction, enclosures as a small class.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lrgauge/cantor.hpp"
#include "lrgauge/error.hpp"
#include "lrgauge/functions.hpp"
#include "lrgauge/hkr.hpp"
#include "lrgauge/lr_analysis.hpp"
#include "lrgauge/partitions.hpp"
#include "lrgauge/variation.hpp"

namespace py = pybind11;
using namespace lrgauge;

namespace pybind11::detail {

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || src.is_none()) return false;
    try {
      // Fraction() is exact for int, float, Fraction and "p/q" strings
      py::object frac = py::module_::import("fractions").attr("Fraction")(src);
      value = Rational::parse(py::str(frac).cast<std::string>());
      return true;
    } catch (const py::error_already_set&) {
      PyErr_Clear();
      return false;
    } catch (const Error&) {
      return false;
    }
  }

  static handle cast(const Rational& q, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(q.str()).release();
  }
};

}  // namespace pybind11::detail

namespace {

py::tuple item_tuple(const TaggedInterval& ti) { return py::make_tuple(ti.seg().left(), ti.seg().right(), ti.tag()); }

py::list items_of(const Division& d) {
  py::list out;
  for (const auto& ti : d.items) out.append(item_tuple(ti));
  return out;
}

Division division_of(const std::vector<std::tuple<Rational, Rational, Rational>>& items) {
  Division d;
  for (const auto& [a, b, x] : items) d.items.emplace_back(Segment(a, b), x);
  return d;
}

py::dict report_dict(const variation::VariationReport& rep) {
  py::dict out;
  out["n"] = rep.params ? py::cast(rep.params->n) : py::none();
  out["l"] = rep.params ? py::cast(rep.params->l) : py::none();
  out["r"] = rep.r;
  out["sum"] = rep.sum;
  out["bound"] = rep.bound;
  out["gauge"] = rep.gauge_descr;
  out["items"] = items_of(rep.division);
  return out;
}

Gauge gauge_of(const std::string& spec) { return Gauge::from_spec(spec); }

py::list segments_of(const IntervalUnion& u) {
  py::list out;
  for (const auto& s : u.parts()) out.append(py::make_tuple(s.left(), s.right()));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact gauge sums, Cantor geometry and L^r probes";

  py::register_exception<Error>(m, "LrgaugeError", PyExc_ValueError);

  py::class_<Enclosure>(m, "Enclosure")
      .def(py::init<Rational, Rational>(), py::arg("lo"), py::arg("hi"))
      .def_property_readonly("lo", &Enclosure::lo)
      .def_property_readonly("hi", &Enclosure::hi)
      .def_property_readonly("width", &Enclosure::width)
      .def_property_readonly("mid", &Enclosure::mid)
      .def("is_exact", &Enclosure::is_exact)
      .def("__contains__", py::overload_cast<const Rational&>(&Enclosure::contains, py::const_))
      .def("__float__", [](const Enclosure& e) { return e.mid().to_double(); })
      .def("__eq__", [](const Enclosure& a, const Enclosure& b) { return a == b; })
      .def("__repr__", [](const Enclosure& e) { return "Enclosure(" + e.lo().str() + ", " + e.hi().str() + ")"; });

  m.def("default_max_width", &default_max_width);

  // cantor
  m.def("in_cantor", &cantor::in_cantor, py::arg("x"));
  m.def("rank_segment", [](const std::string& a) {
    Segment s = cantor::rank_segment(cantor::Address(a));
    return py::make_tuple(s.left(), s.right());
  });
  m.def("contiguous_interval", [](const std::string& a) {
    Segment s = cantor::contiguous_interval(cantor::Address(a));
    return py::make_tuple(s.left(), s.right());
  });
  m.def("v_interval", [](const std::string& a) {
    Segment s = cantor::v_interval(cantor::Address(a));
    return py::make_tuple(s.left(), s.right());
  });
  m.def(
      "decompose",
      [](const std::string& a, std::size_t l) {
        cantor::Decomposition d = cantor::decompose(cantor::Address(a), l);
        py::list segs, gaps;
        for (const auto& s : d.segments) segs.append(s.word());
        for (const auto& g : d.gaps) gaps.append(py::make_tuple(g.interval.left(), g.interval.right(), g.rank));
        py::dict out;
        out["segments"] = segs;
        out["gaps"] = gaps;
        return out;
      },
      py::arg("address"), py::arg("l"));

  // counterexample
  m.def("vn_integral_exact", &vn_integral_exact, py::arg("n"), py::arg("r"));
  m.def(
      "value_at",
      [](const std::string& pair, const Rational& x) { return value_at(hkr::CandidatePair::from_name(pair).F, x); },
      py::arg("pair"), py::arg("x"));
  m.def(
      "integrate",
      [](const std::string& pair, const Rational& a, const Rational& b, unsigned r, const Rational& c,
         const Rational& slope, const Rational& anchor, const Rational& max_width) {
        return integrate_abs_pow(hkr::CandidatePair::from_name(pair).F, Segment(a, b), AffineReference{c, slope, anchor},
                                 r, max_width);
      },
      "integral over [a, b] of |F(y) - c - slope (y - anchor)|^r", py::arg("pair"), py::arg("a"), py::arg("b"),
      py::arg("r"), py::arg("c") = Rational(0), py::arg("slope") = Rational(0), py::arg("anchor") = Rational(0),
      py::arg("max_width") = default_max_width());

  // partitions
  m.def(
      "cousin_division",
      [](const std::string& gauge, const Rational& a, const Rational& b) {
        return items_of(cousin_division(Segment(a, b), gauge_of(gauge)));
      },
      py::arg("gauge"), py::arg("a") = Rational(0), py::arg("b") = Rational(1));
  m.def(
      "is_fine",
      [](const std::string& gauge, const Rational& a, const Rational& b, const Rational& tag) {
        return is_fine(TaggedInterval(Segment(a, b), tag), gauge_of(gauge));
      },
      py::arg("gauge"), py::arg("a"), py::arg("b"), py::arg("tag"));
  m.def("validate_division", [](const std::vector<std::tuple<Rational, Rational, Rational>>& items) {
    return validate_division(division_of(items));
  });

  // lr analysis
  m.def(
      "delta_r",
      [](const std::string& pair, const Rational& a, const Rational& b, const Rational& tag, unsigned r) {
        return lr::delta_r(hkr::CandidatePair::from_name(pair).F, TaggedInterval(Segment(a, b), tag), r);
      },
      py::arg("pair"), py::arg("a"), py::arg("b"), py::arg("tag"), py::arg("r"));
  m.def(
      "omega",
      [](const std::string& pair, const Rational& x, const Rational& h, unsigned r) {
        return lr::omega(hkr::CandidatePair::from_name(pair).F, x, h, r);
      },
      py::arg("pair"), py::arg("x"), py::arg("h"), py::arg("r"));
  m.def(
      "lr_derivative",
      [](const std::string& pair, const Rational& x, unsigned r, const std::vector<Rational>& h_list) {
        lr::DerivativeStudy s = lr::lr_derivative_estimate(hkr::CandidatePair::from_name(pair).F, x, r, h_list);
        py::list rows;
        for (const auto& row : s.rows) rows.append(py::make_tuple(row.h, row.alpha, row.residual));
        return py::make_tuple(rows, s.little_o);
      },
      "rows of (h, alpha, residual) and the little-o verdict", py::arg("pair"), py::arg("x"), py::arg("r"),
      py::arg("h_list"));
  m.def(
      "s_set",
      [](const std::string& pair, const Rational& x, const Rational& h, unsigned r) {
        lr::SSet s = lr::s_set(hkr::CandidatePair::from_name(pair).F, x, h, r);
        py::dict out;
        out["inner"] = segments_of(s.inner);
        out["outer"] = segments_of(s.outer);
        out["threshold"] = s.threshold;
        return out;
      },
      py::arg("pair"), py::arg("x"), py::arg("h"), py::arg("r"));
  m.def(
      "density_at_zero",
      [](const std::vector<std::pair<Rational, Rational>>& parts, const std::vector<Rational>& ks) {
        std::vector<Segment> segs;
        for (const auto& [a, b] : parts) segs.emplace_back(a, b);
        return lr::density_at_zero(IntervalUnion(segs), ks);
      },
      py::arg("parts"), py::arg("k_list"));

  // variation
  m.def("term_bound", &variation::term_bound, py::arg("n"), py::arg("l"), py::arg("r"));
  m.def("division_bound", &variation::division_bound, py::arg("n"), py::arg("l"), py::arg("r"));
  m.def(
      "minimal_workable_rank",
      [](const std::string& gauge) {
        variation::WorkableRank w = variation::minimal_workable_rank(gauge_of(gauge));
        return py::make_tuple(w.n, w.address.word());
      },
      py::arg("gauge"));
  m.def(
      "adversarial_report",
      [](const std::string& gauge, std::size_t n, std::size_t l, unsigned r, const std::string& pair) {
        auto p = hkr::CandidatePair::from_name(pair);
        if (!p.counterexample()) throw Error(ErrorKind::InvalidArgument, "needs a counterexample pair");
        return report_dict(variation::adversarial_report(*p.counterexample(), gauge_of(gauge), n, l, r));
      },
      py::arg("gauge"), py::arg("n"), py::arg("l"), py::arg("r"), py::arg("pair") = "main");
  m.def(
      "variation_search",
      [](const std::string& gauge, unsigned r, const Rational& target, std::size_t l_max, const std::string& pair) {
        auto p = hkr::CandidatePair::from_name(pair);
        if (!p.counterexample()) throw Error(ErrorKind::InvalidArgument, "needs a counterexample pair");
        Gauge g = gauge_of(gauge);
        std::optional<variation::VariationReport> rep;
        {
          py::gil_scoped_release release;
          rep = variation::variation_search(*p.counterexample(), g, r, target, l_max);
        }
        return report_dict(*rep);
      },
      py::arg("gauge"), py::arg("r"), py::arg("target"), py::arg("l_max") = 16, py::arg("pair") = "main");
  m.def(
      "var_sum",
      [](const std::string& pair, const std::vector<std::tuple<Rational, Rational, Rational>>& items, unsigned r) {
        return variation::var_sum(hkr::CandidatePair::from_name(pair).F, division_of(items), r);
      },
      py::arg("pair"), py::arg("items"), py::arg("r"));
  m.def(
      "varap_sum",
      [](const std::string& pair, const std::vector<std::tuple<Rational, Rational, Rational>>& items) {
        return variation::varap_sum(hkr::CandidatePair::from_name(pair).F, division_of(items));
      },
      py::arg("pair"), py::arg("items"));

  // hkr
  m.def(
      "hkr_sum",
      [](const std::string& pair, const std::vector<std::tuple<Rational, Rational, Rational>>& items, unsigned r) {
        return hkr::hkr_sum(hkr::CandidatePair::from_name(pair), division_of(items), r);
      },
      py::arg("pair"), py::arg("items"), py::arg("r"));
  m.def(
      "cousin_for",
      [](const std::string& pair, const Rational& delta) {
        return items_of(hkr::cousin_for(hkr::CandidatePair::from_name(pair), delta));
      },
      py::arg("pair"), py::arg("delta"));
  m.def(
      "hkr_study",
      [](const std::string& pair, const std::vector<Rational>& deltas, unsigned r, const Rational& target) {
        hkr::Study s = hkr::hkr_refinement_study(hkr::CandidatePair::from_name(pair), deltas, r, target);
        py::list rows;
        for (const auto& row : s.rows) rows.append(py::make_tuple(row.delta, row.sum, row.verdict));
        return py::make_tuple(rows, s.falsified);
      },
      py::arg("pair"), py::arg("deltas"), py::arg("r"), py::arg("target") = Rational(100));
}
