#include "lrgauge/partitions.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lrgauge/error.hpp"

namespace lrgauge {

TaggedInterval::TaggedInterval(Segment seg, Rational tag) : seg_(std::move(seg)), tag_(std::move(tag)) {
  if (!seg_.contains(tag_)) throw Error(ErrorKind::InvalidArgument, "tag " + tag_.str() + " outside segment");
}

Rational Division::total_length() const {
  Rational total(0);
  for (const auto& it : items) total += it.seg().length();
  return total;
}

bool validate_division(const Division& d) {
  std::vector<const TaggedInterval*> sorted;
  sorted.reserve(d.items.size());
  for (const auto& it : d.items) {
    if (!it.seg().contains(it.tag())) return false;
    sorted.push_back(&it);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->seg().left() < b->seg().left(); });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i]->seg().left() < sorted[i - 1]->seg().right()) return false;
  return true;
}

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) {
      auto b = f.find_first_not_of(" \t");
      auto e = f.find_last_not_of(" \t");
      fields.push_back(b == std::string::npos ? "" : f.substr(b, e - b + 1));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open gauge file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_positive(const Rational& v, const char* what) {
  if (v.sign() <= 0) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be positive, got " + v.str());
}

}  // namespace

std::string division_to_csv(const Division& d) {
  std::ostringstream out;
  out << "left,right,tag\n";
  for (const auto& it : d.items) out << it.seg().left() << ',' << it.seg().right() << ',' << it.tag() << '\n';
  return out.str();
}

Division division_from_csv(const std::string& text) {
  Division d;
  for (const auto& row : csv_rows(text)) {
    if (row.size() != 3) throw Error(ErrorKind::Parse, "division rows need 3 fields");
    if (row[0] == "left") continue;
    d.items.emplace_back(Segment(Rational::parse(row[0]), Rational::parse(row[1])), Rational::parse(row[2]));
  }
  return d;
}

Gauge::Gauge(Variant v) : v_(std::move(v)) {
  std::visit(
      [](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ConstantGauge>) {
          require_positive(g.value, "gauge value");
        } else if constexpr (std::is_same_v<T, PiecewiseConstantGauge>) {
          for (std::size_t i = 1; i < g.breakpoints.size(); ++i)
            if (!(g.breakpoints[i - 1] < g.breakpoints[i]))
              throw Error(ErrorKind::InvalidArgument, "breakpoints must be strictly increasing");
          for (const auto& v : g.values) require_positive(v, "gauge value");
          require_positive(g.fallback, "gauge default");
        } else {
          for (const auto& [k, v] : g.values) require_positive(v, "gauge value");
          require_positive(g.fallback, "gauge default");
        }
      },
      v_);
}

Gauge Gauge::pwc_from_csv(const std::string& text) {
  std::optional<Rational> fallback;
  std::vector<std::pair<Rational, Rational>> cells;
  for (const auto& row : csv_rows(text)) {
    if (row.size() != 2) throw Error(ErrorKind::Parse, "gauge rows need 2 fields");
    if (row[0] == "breakpoint") continue;
    if (row[0] == "default")
      fallback = Rational::parse(row[1]);
    else
      cells.emplace_back(Rational::parse(row[0]), Rational::parse(row[1]));
  }
  if (!fallback) throw Error(ErrorKind::Parse, "pwc gauge file needs a 'default,VALUE' row");
  std::sort(cells.begin(), cells.end());
  PiecewiseConstantGauge g;
  g.values.push_back(*fallback);
  for (auto& [b, v] : cells) {
    g.breakpoints.push_back(b);
    g.values.push_back(v);
  }
  g.fallback = *fallback;
  return Gauge(std::move(g));
}

Gauge Gauge::rank_from_csv(const std::string& text) {
  std::optional<Rational> fallback;
  CantorRankGauge g;
  for (const auto& row : csv_rows(text)) {
    if (row.size() != 2) throw Error(ErrorKind::Parse, "gauge rows need 2 fields");
    if (row[0] == "prefix") continue;
    if (row[0] == "default")
      fallback = Rational::parse(row[1]);
    else
      g.values[cantor::Address(row[0])] = Rational::parse(row[1]);
  }
  if (!fallback) throw Error(ErrorKind::Parse, "rank gauge file needs a 'default,VALUE' row");
  g.fallback = *fallback;
  return Gauge(std::move(g));
}

Gauge Gauge::from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "gauge spec needs KIND:ARG, got '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "const") return constant(Rational::parse(arg));
  if (kind == "pwc") return pwc_from_csv(read_file(arg));
  if (kind == "rank") return rank_from_csv(read_file(arg));
  throw Error(ErrorKind::Parse, "unknown gauge kind '" + kind + "'");
}

std::string Gauge::describe() const {
  std::ostringstream out;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ConstantGauge>) {
          out << "const:" << g.value;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantGauge>) {
          out << "pwc:default=" << g.fallback;
          if (!g.values.empty()) out << ";-inf=" << g.values[0];
          for (std::size_t i = 0; i < g.breakpoints.size(); ++i) {
            out << ';' << g.breakpoints[i] << '=';
            if (i + 1 < g.values.size())
              out << g.values[i + 1];
            else
              out << g.fallback;
          }
        } else {
          out << "rank:default=" << g.fallback;
          for (const auto& [k, v] : g.values) out << ';' << (k.word().empty() ? "-" : k.word()) << '=' << v;
        }
      },
      v_);
  return out.str();
}

namespace {

const Rational& pwc_cell_value(const PiecewiseConstantGauge& g, std::size_t cell) {
  return cell < g.values.size() ? g.values[cell] : g.fallback;
}

std::size_t pwc_cell(const PiecewiseConstantGauge& g, const Rational& x) {
  return static_cast<std::size_t>(std::upper_bound(g.breakpoints.begin(), g.breakpoints.end(), x) -
                                  g.breakpoints.begin());
}

std::size_t max_key_rank(const CantorRankGauge& g) {
  std::size_t m = 0;
  for (const auto& [k, v] : g.values) m = std::max(m, k.rank());
  return m;
}

const Rational& rank_value_for(const CantorRankGauge& g, const cantor::Address& a) {
  for (std::size_t len = a.rank() + 1; len-- > 0;) {
    auto it = g.values.find(cantor::Address(a.word().substr(0, len)));
    if (it != g.values.end()) return it->second;
  }
  return g.fallback;
}

}  // namespace

Rational gauge_at(const Gauge& g, const Rational& x) {
  return std::visit(
      [&](const auto& v) -> Rational {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantGauge>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantGauge>) {
          return pwc_cell_value(v, pwc_cell(v, x));
        } else {
          if (x < Rational(0) || x > Rational(1))
            throw Error(ErrorKind::OutOfDomain, "Cantor-rank gauge at " + x.str());
          return rank_value_for(v, cantor::address_prefix(x, max_key_rank(v)));
        }
      },
      g.variant());
}

Rational gauge_inf_on_rank_segment(const Gauge& g, const cantor::Address& a) {
  return std::visit(
      [&](const auto& v) -> Rational {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantGauge>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantGauge>) {
          Segment s = cantor::rank_segment(a);
          std::size_t first = pwc_cell(v, s.left());
          std::size_t last = pwc_cell(v, s.right());
          Rational m = pwc_cell_value(v, first);
          for (std::size_t c = first + 1; c <= last; ++c) m = min(m, pwc_cell_value(v, c));
          return m;
        } else {
          Rational m = rank_value_for(v, a);
          for (const auto& [k, val] : v.values)
            if (k.rank() > a.rank() && k.has_prefix(a)) m = min(m, val);
          return m;
        }
      },
      g.variant());
}

bool gauge_varies_inside(const Gauge& g, const cantor::Address& a) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantGauge>) {
          return false;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantGauge>) {
          Segment s = cantor::rank_segment(a);
          return std::any_of(v.breakpoints.begin(), v.breakpoints.end(),
                             [&](const Rational& b) { return s.contains(b); });
        } else {
          for (const auto& [k, val] : v.values)
            if (k.rank() > a.rank() && k.has_prefix(a)) return true;
          return false;
        }
      },
      g.variant());
}

bool is_fine(const TaggedInterval& ti, const Gauge& g) {
  Rational d = gauge_at(g, ti.tag());
  return ti.tag() - d < ti.seg().left() && ti.seg().right() < ti.tag() + d;
}

Division cousin_division(const Segment& seg, const Gauge& g, unsigned max_depth) {
  Division out;
  struct Frame {
    Segment seg;
    unsigned depth;
  };
  std::vector<Frame> stack{{seg, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    bool done = false;
    for (const Rational& tag : {f.seg.center(), f.seg.left(), f.seg.right()}) {
      TaggedInterval ti(f.seg, tag);
      if (is_fine(ti, g)) {
        out.items.push_back(std::move(ti));
        done = true;
        break;
      }
    }
    if (done) continue;
    if (f.depth >= max_depth)
      throw Error(ErrorKind::DepthExceeded, "cousin_division passed depth " + std::to_string(max_depth));
    Rational mid = f.seg.center();
    // Right half first so the left half is emitted first.
    stack.push_back({Segment(mid, f.seg.right()), f.depth + 1});
    stack.push_back({Segment(f.seg.left(), mid), f.depth + 1});
  }
  return out;
}

bool tag_set_contains(const TagSet& e, const Rational& x) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FinitePoints>) {
          return std::find(s.points.begin(), s.points.end(), x) != s.points.end();
        } else {
          if (x < Rational(0) || x > Rational(1)) return false;
          if (!cantor::in_cantor(x)) return false;
          if constexpr (std::is_same_v<T, CantorAll>) {
            return true;
          } else {
            mpz_class den = x.denominator();
            for (std::size_t i = 0; i < s.rank && den % 3 == 0; ++i) den /= 3;
            return den == 1;
          }
        }
      },
      e);
}

bool tagged_in(const Division& d, const TagSet& e) {
  return std::all_of(d.items.begin(), d.items.end(),
                     [&](const TaggedInterval& ti) { return tag_set_contains(e, ti.tag()); });
}

}  // namespace lrgauge
