#include "lrgauge/functions.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "lrgauge/error.hpp"

namespace lrgauge {

namespace {

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(mpq_class(out));
}

const Polynomial& smoothstep() {
  static const Polynomial s({Rational(0), Rational(0), Rational(3), Rational(-2)});
  return s;
}

}  // namespace

// ---------------------------------------------------------------- PiecewisePolynomial

PiecewisePolynomial::PiecewisePolynomial(std::string name, std::vector<Piece> pieces)
    : name_(std::move(name)), pieces_(std::move(pieces)), domain_(Segment(Rational(0), Rational(1))) {
  if (pieces_.empty()) throw Error(ErrorKind::InvalidArgument, "piecewise polynomial needs a piece");
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (pieces_[i].seg.left() != pieces_[i - 1].seg.right())
      throw Error(ErrorKind::InvalidArgument, "pieces must tile the domain left to right");
  domain_ = Segment(pieces_.front().seg.left(), pieces_.back().seg.right());
}

PiecewisePolynomial PiecewisePolynomial::polynomial(std::string name, Polynomial p, Segment domain) {
  return PiecewisePolynomial(std::move(name), {Piece{std::move(domain), std::move(p)}});
}

PiecewisePolynomial PiecewisePolynomial::zero(Segment domain) {
  return polynomial("zero", Polynomial(), std::move(domain));
}

PiecewisePolynomial PiecewisePolynomial::identity(Segment domain) {
  return polynomial("identity", Polynomial::monomial(1), std::move(domain));
}

PiecewisePolynomial PiecewisePolynomial::square(Segment domain) {
  return polynomial("square", Polynomial::monomial(2), std::move(domain));
}

PiecewisePolynomial PiecewisePolynomial::absolute(Segment domain) {
  if (!domain.interior_contains(Rational(0)))
    throw Error(ErrorKind::InvalidArgument, "absolute value test function needs 0 inside its domain");
  return PiecewisePolynomial("absolute", {Piece{Segment(domain.left(), Rational(0)), Polynomial::affine(-1, 0)},
                                          Piece{Segment(Rational(0), domain.right()), Polynomial::monomial(1)}});
}

Rational PiecewisePolynomial::value_at(const Rational& x) const {
  for (const auto& p : pieces_)
    if (p.seg.contains(x)) return p.poly(x);
  throw Error(ErrorKind::OutOfDomain, name_ + " at " + x.str());
}

Rational PiecewisePolynomial::derivative_at(const Rational& x) const {
  for (const auto& p : pieces_)
    if (p.seg.contains(x)) return p.poly.derivative()(x);
  throw Error(ErrorKind::OutOfDomain, name_ + "' at " + x.str());
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
  std::vector<Piece> out;
  for (const auto& p : pieces_) out.push_back(Piece{p.seg, p.poly.derivative()});
  return PiecewisePolynomial(name_ + "'", std::move(out));
}

// ---------------------------------------------------------------- CounterexampleF

CounterexampleF::CounterexampleF(Variant v, Rational base, std::size_t cutoff)
    : variant_(v), ratio_base_(std::move(base)), cutoff_(cutoff) {
  if (cutoff_ == 0) throw Error(ErrorKind::InvalidArgument, "cutoff depth must be positive");
  if (variant_ == Variant::Thin && !(Rational(0) < ratio_base_ && ratio_base_ < Rational(1)))
    throw Error(ErrorKind::InvalidArgument, "plateau ratio base must lie in (0, 1)");
}

CounterexampleF CounterexampleF::main(std::size_t cutoff_depth) {
  return CounterexampleF(Variant::Main, Rational(1, 2), cutoff_depth);
}

CounterexampleF CounterexampleF::thin(Rational ratio_base, std::size_t cutoff_depth) {
  return CounterexampleF(Variant::Thin, std::move(ratio_base), cutoff_depth);
}

Rational CounterexampleF::height(std::size_t rank) const {
  if (variant_ == Variant::Main) return Rational(1, static_cast<long>(rank));
  return Rational(1);
}

Rational CounterexampleF::plateau_ratio(std::size_t rank) const {
  if (variant_ == Variant::Main) return Rational(1, 2);
  return ratio_base_.pow(static_cast<unsigned>(rank));
}

Rational CounterexampleF::sup_inside(std::size_t rank) const { return height(rank + 1); }

std::vector<Piece> CounterexampleF::gap_pieces(std::size_t gap_rank, const Rational& origin) const {
  const Rational u = cantor::rank_length(gap_rank);
  const Rational h = height(gap_rank);
  const Rational b = (Rational(1) - plateau_ratio(gap_rank)) * u / Rational(2);
  const Rational end = origin + u;
  std::vector<Piece> out;
  out.push_back(Piece{Segment(origin, origin + b), smoothstep().compose_affine(Rational(1) / b, -origin / b) * h});
  out.push_back(Piece{Segment(origin + b, end - b), Polynomial::constant(h)});
  out.push_back(Piece{Segment(end - b, end), smoothstep().compose_affine(-Rational(1) / b, end / b) * h});
  return out;
}

Segment domain_of(const Primitive& F) {
  return std::visit(
      [](const auto& f) -> Segment {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CounterexampleF>)
          return Segment(Rational(0), Rational(1));
        else
          return f.domain();
      },
      F);
}

std::string name_of(const Primitive& F) {
  return std::visit([](const auto& f) { return std::string(f.name()); }, F);
}

// ---------------------------------------------------------------- pointwise

namespace {

void require_unit(const Rational& x) {
  if (x < Rational(0) || x > Rational(1)) throw Error(ErrorKind::OutOfDomain, "point " + x.str() + " outside [0, 1]");
}

const Piece& piece_containing(const std::vector<Piece>& pieces, const Rational& x) {
  for (const auto& p : pieces)
    if (p.seg.contains(x)) return p;
  throw Error(ErrorKind::OutOfDomain, "no piece contains " + x.str());
}

}  // namespace

Enclosure value_at(const CounterexampleF& F, const Rational& x) {
  require_unit(x);
  cantor::Location loc = cantor::locate(x, F.cutoff_depth());
  switch (loc.kind) {
    case cantor::Location::Kind::Cantor:
      return Enclosure(Rational(0));
    case cantor::Location::Kind::Gap: {
      auto pieces = F.gap_pieces(loc.parent.rank() + 1, cantor::contiguous_interval(loc.parent).left());
      return Enclosure(piece_containing(pieces, x).poly(x));
    }
    case cantor::Location::Kind::Unresolved:
      break;
  }
  return Enclosure(Rational(0), F.sup_inside(F.cutoff_depth()));
}

Enclosure value_at(const Primitive& F, const Rational& x) {
  return std::visit(
      [&](const auto& f) -> Enclosure {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CounterexampleF>)
          return value_at(f, x);
        else
          return Enclosure(f.value_at(x));
      },
      F);
}

Rational exact_value_at(const Primitive& F, const Rational& x) {
  Enclosure e = value_at(F, x);
  if (!e.is_exact()) throw Error(ErrorKind::DepthExceeded, "value at " + x.str() + " not resolved");
  return e.lo();
}

Rational derivative_at(const CounterexampleF& F, const Rational& x) {
  require_unit(x);
  cantor::Location loc = cantor::locate(x, F.cutoff_depth());
  switch (loc.kind) {
    case cantor::Location::Kind::Cantor:
      return Rational(0);
    case cantor::Location::Kind::Gap: {
      auto pieces = F.gap_pieces(loc.parent.rank() + 1, cantor::contiguous_interval(loc.parent).left());
      return piece_containing(pieces, x).poly.derivative()(x);
    }
    case cantor::Location::Kind::Unresolved:
      break;
  }
  throw Error(ErrorKind::DepthExceeded, "derivative at " + x.str() + " beyond cutoff");
}

Rational derivative_at(const Primitive& F, const Rational& x) {
  return std::visit([&](const auto& f) -> Rational {
    using T = std::decay_t<decltype(f)>;
    if constexpr (std::is_same_v<T, CounterexampleF>)
      return derivative_at(f, x);
    else
      return f.derivative_at(x);
  }, F);
}

Rational vn_integral_exact(unsigned n, unsigned r) {
  if (n == 0 || r == 0) throw Error(ErrorKind::InvalidArgument, "rank and power must be positive");
  mpz_class np;
  mpz_ui_pow_ui(np.get_mpz_t(), n, r);
  mpz_class tp;
  mpz_ui_pow_ui(tp.get_mpz_t(), 3, n);
  return Rational(mpq_class(mpz_class(1), 2 * np * tp));
}

// ---------------------------------------------------------------- moments

namespace {

constexpr unsigned kMomentBits = 160;

// Normalized moments of one rank-m segment S = [p, p + L]:
//   N[k][i] = L^-(i+1) * integral over S of F^k (y - p)^i dy,   k + i <= order.
// Every rank-m segment carries the same F up to translation, so one table per rank suffices.
class MomentTable {
 public:
  MomentTable(const CounterexampleF& F, unsigned order, std::size_t max_rank, std::size_t extra)
      : order_(order), levels_(max_rank + 1) {
    if (F.variant() == CounterexampleF::Variant::Main) main_gaps_ = gap_integrals(F, 1);
    const std::size_t bottom = max_rank + extra;
    Level cur = bottom_bounds(F, bottom);
    for (std::size_t m = bottom; m-- > 0;) {
      cur = step(F, m, cur);
      if (m <= max_rank) levels_[m] = cur;
    }
  }

  /// Enclosure of the integral of F^k (y - p)^i over a rank-m segment starting at p.
  Enclosure moment(std::size_t m, unsigned k, unsigned i) const {
    const Rational scale = cantor::rank_length(m).pow(i + 1);
    const Enclosure& n = levels_.at(m)[index(k, i)];
    return Enclosure(n.lo() * scale, n.hi() * scale);
  }

  std::size_t max_rank() const { return levels_.size() - 1; }

 private:
  std::size_t index(unsigned k, unsigned i) const { return k * (order_ + 1) + i; }

  using Level = std::vector<Enclosure>;

  Level blank() const { return Level((order_ + 1) * (order_ + 1)); }

  Level bottom_bounds(const CounterexampleF& F, std::size_t m) const {
    auto out = blank();
    const Rational sup = F.sup_inside(m);
    for (unsigned k = 0; k <= order_; ++k)
      for (unsigned i = 0; k + i <= order_; ++i) {
        Rational full = Rational(1) / Rational(static_cast<long>(i + 1));
        out[index(k, i)] = k == 0 ? Enclosure(full) : Enclosure(Rational(0), sup.pow(k) * full);
      }
    return out;
  }

  // J[k][i] = integral over t in [0,1] of phi(t)^k (1 + t)^i, where the gap of rank j
  // occupies [1, 2] in units of 3^-j and F = height * phi there.
  std::vector<Rational> gap_integrals(const CounterexampleF& F, std::size_t gap_rank) const {
    const Rational rho = F.plateau_ratio(gap_rank);
    const Rational b = (Rational(1) - rho) / Rational(2);
    std::vector<Piece> phi;
    phi.push_back(Piece{Segment(Rational(0), b), smoothstep().compose_affine(Rational(1) / b, Rational(0))});
    phi.push_back(Piece{Segment(b, Rational(1) - b), Polynomial::constant(Rational(1))});
    phi.push_back(Piece{Segment(Rational(1) - b, Rational(1)),
                        smoothstep().compose_affine(-Rational(1) / b, Rational(1) / b)});
    std::vector<Rational> out((order_ + 1) * (order_ + 1), Rational(0));
    for (unsigned i = 0; i <= order_; ++i) {
      Polynomial w = Polynomial::affine(Rational(1), Rational(1)).pow(i);
      for (unsigned k = 0; k + i <= order_; ++k)
        for (const auto& pc : phi) out[index(k, i)] += (pc.poly.pow(k) * w).integrate(pc.seg.left(), pc.seg.right());
    }
    return out;
  }

  Level step(const CounterexampleF& F, std::size_t m, const Level& child) const {
    // Main plateaus keep ratio 1/2 at every rank, so the normalized gap integrals are shared.
    const std::vector<Rational> gaps =
        F.variant() == CounterexampleF::Variant::Main ? main_gaps_ : gap_integrals(F, m + 1);
    const Rational h = F.height(m + 1);
    auto out = blank();
    for (unsigned k = 0; k <= order_; ++k) {
      const Rational hk = h.pow(k);
      for (unsigned i = 0; k + i <= order_; ++i) {
        Enclosure acc = child[index(k, i)];
        for (unsigned q = 0; q <= i; ++q) {
          Rational c = binomial(i, q) * Rational::power(2, i - q);
          const Enclosure& n = child[index(k, q)];
          acc += Enclosure(n.lo() * c, n.hi() * c);
        }
        acc += Enclosure(hk * gaps[index(k, i)]);
        Rational s = Rational::inverse_power(3, i + 1);
        Enclosure scaled(acc.lo() * s, acc.hi() * s);
        out[index(k, i)] = k == 0 ? Enclosure(Rational(1) / Rational(static_cast<long>(i + 1)))
                                     : scaled.rounded(kMomentBits);
      }
    }
    return out;
  }

  unsigned order_;
  std::vector<Level> levels_;
  std::vector<Rational> main_gaps_;
};

std::shared_ptr<const MomentTable> moment_table(const CounterexampleF& F, unsigned order, std::size_t max_rank) {
  // Tail bound shrinks by 2/3 per level; 120 levels put it near 2^-70 relative.
  constexpr std::size_t kExtra = 120;
  using Key = std::tuple<int, std::string, unsigned, std::size_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const MomentTable>> cache;
  Key key{static_cast<int>(F.variant()), F.ratio_base().str(), order, max_rank};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const MomentTable>(F, order, max_rank, kExtra);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(table)).first->second;
}

std::size_t hard_depth_limit(const CounterexampleF& F) { return 2 * F.cutoff_depth() + 20; }

// ---------------------------------------------------------------- integration

class CantorIntegrator {
 public:
  CantorIntegrator(const CounterexampleF& F, const AffineReference& ref, unsigned r, const Rational& max_width)
      : F_(F), ref_(ref), line_(ref.as_polynomial()), r_(r), leaf_tol_(max_width / Rational(1 << 16)) {}

  Enclosure run(const Segment& seg) {
    node(Rational(0), 0, seg);
    return Enclosure(lo_, hi_);
  }

 private:
  static constexpr std::size_t kNodeBudget = 100000;

  const MomentTable& table() {
    if (!table_) table_ = moment_table(F_, r_, hard_depth_limit(F_));
    return *table_;
  }

  void node(const Rational& p, std::size_t m, const Segment& seg) {
    const Segment self(p, p + cantor::rank_length(m));
    auto part = self.intersect(seg);
    if (!part) return;
    if (*part == self) {
      whole(p, m);
      return;
    }
    if (stop_here(*part, m)) return;
    split(p, m, seg);
  }

  // Past the cutoff a narrow crude bound ends the descent; an exhausted budget ends it anywhere
  // and leaves the width check to report failure.
  bool stop_here(const Segment& part, std::size_t m) {
    ++visited_;
    if (visited_ > kNodeBudget) {
      add(crude(part, F_.sup_inside(m)));
      return true;
    }
    if (m < F_.cutoff_depth()) return false;
    Enclosure c = crude(part, F_.sup_inside(m));
    if (c.width() <= leaf_tol_ || m >= hard_depth_limit(F_)) {
      add(c);
      return true;
    }
    return false;
  }

  void split(const Rational& p, std::size_t m, const Segment& seg) {
    const Rational third = cantor::rank_length(m + 1);
    node(p, m + 1, seg);
    for (const auto& pc : F_.gap_pieces(m + 1, p + third))
      if (auto part = pc.seg.intersect(seg)) add(integrate_abs_pow(pc.poly - line_, *part, r_, leaf_tol_));
    node(p + third * Rational(2), m + 1, seg);
  }

  void whole(const Rational& p, std::size_t m) {
    const Rational len = cantor::rank_length(m);
    const Rational a = ref_.value + ref_.slope * (p - ref_.anchor);
    const Rational a_end = a + ref_.slope * len;
    int sign = 1;
    if (r_ % 2 == 1) {
      const Rational sup = F_.sup_inside(m);
      if (a.sign() <= 0 && a_end.sign() <= 0) {
        sign = 1;  // F - ref >= 0 throughout
      } else if (min(a, a_end) >= sup) {
        sign = -1;  // F - ref <= 0 throughout
      } else {
        const Segment self(p, p + len);
        if (stop_here(self, m)) return;
        split(p, m, self);
        return;
      }
    }
    if (m > table().max_rank()) {
      add(crude(Segment(p, p + len), F_.sup_inside(m)));
      return;
    }
    // (F - a - slope z)^r = sum_k sum_i C(r,k) C(r-k,i) (-1)^(r-k) a^(r-k-i) slope^i F^k z^i
    Enclosure acc(Rational(0));
    for (unsigned k = 0; k <= r_; ++k) {
      for (unsigned i = 0; k + i <= r_; ++i) {
        Rational coef = binomial(r_, k) * binomial(r_ - k, i) * a.pow(r_ - k - i) * ref_.slope.pow(i);
        if ((r_ - k) % 2 == 1) coef = -coef;
        if (coef.is_zero()) continue;
        Enclosure mom = table().moment(m, k, i);
        acc += coef.sign() > 0 ? Enclosure(mom.lo() * coef, mom.hi() * coef)
                               : Enclosure(mom.hi() * coef, mom.lo() * coef);
      }
    }
    if (sign < 0) acc = -acc;
    // Nonnegative integrand; clamp lower end.
    if (acc.lo().sign() < 0) acc = Enclosure(Rational(0), max(acc.hi(), Rational(0)));
    add(acc);
  }

  // F ranges over [0, sup] on the part; the affine reference is monotone there.
  Enclosure crude(const Segment& part, const Rational& sup) const {
    const Rational l0 = line_(part.left());
    const Rational l1 = line_(part.right());
    const Rational lmin = min(l0, l1);
    const Rational lmax = max(l0, l1);
    // F - ref ranges over [-lmax, sup - lmin].
    const Rational dlo = -lmax;
    const Rational dhi = sup - lmin;
    const Rational upper = max(dlo.abs(), dhi.abs());
    Rational lower(0);
    if (dlo.sign() >= 0)
      lower = dlo;
    else if (dhi.sign() <= 0)
      lower = -dhi;
    const Rational len = part.length();
    return Enclosure(len * lower.pow(r_), len * upper.pow(r_));
  }

  void add(const Enclosure& e) {
    lo_ += e.lo();
    hi_ += e.hi();
  }

  const CounterexampleF& F_;
  const AffineReference& ref_;
  Polynomial line_;
  unsigned r_;
  Rational leaf_tol_;
  Rational lo_{0};
  Rational hi_{0};
  std::size_t visited_ = 0;
  std::shared_ptr<const MomentTable> table_;
};

}  // namespace

Enclosure integrate_abs_pow(const Primitive& F, const Segment& seg, const AffineReference& ref, unsigned r,
                            const Rational& max_width) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "power must be positive");
  if (max_width.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "max_width must be positive");
  if (!domain_of(F).contains(seg)) throw Error(ErrorKind::OutOfDomain, "integration segment outside domain");
  Enclosure out = std::visit(
      [&](const auto& f) -> Enclosure {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CounterexampleF>) {
          CantorIntegrator it(f, ref, r, max_width);
          return it.run(seg);
        } else {
          const Rational leaf_tol = max_width / Rational(1 << 16);
          const Polynomial line = ref.as_polynomial();
          Enclosure acc(Rational(0));
          for (const auto& pc : f.pieces())
            if (auto part = pc.seg.intersect(seg)) acc += integrate_abs_pow(pc.poly - line, *part, r, leaf_tol);
          return acc;
        }
      },
      F);
  if (out.width() > max_width)
    throw Error(ErrorKind::WidthUnachievable,
                "integral enclosure width " + out.width().decimal(20) + " exceeds " + max_width.decimal(20));
  return out;
}

Rational sup_deviation_bound(const Primitive& F, const Segment& seg, const Rational& c) {
  return std::visit(
      [&](const auto& f) -> Rational {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CounterexampleF>) {
          return max(c.abs(), (Rational(1) - c).abs());
        } else {
          Rational out(0);
          for (const auto& pc : f.pieces())
            if (auto part = pc.seg.intersect(seg))
              out = max(out, sup_abs_bound(pc.poly - Polynomial::constant(c), *part));
          return out;
        }
      },
      F);
}

// ---------------------------------------------------------------- sublevel sets

namespace {

class CantorSublevel {
 public:
  CantorSublevel(const CounterexampleF& F, const Rational& c, const Rational& w_in, const Rational& w_out,
                 const Rational& tol)
      : F_(F), c_(c), w_in_(w_in), w_out_(w_out), tol_(tol) {}

  void node(const Rational& p, std::size_t m, const Segment& seg) {
    const Segment self(p, p + cantor::rank_length(m));
    auto part = self.intersect(seg);
    if (!part) return;
    const Rational sup = F_.sup_inside(m);
    // F takes values in [0, sup] on this node, including 0 on its Cantor points.
    if (c_ - w_in_ <= Rational(0) && sup <= c_ + w_in_) {
      parts_.inner.push_back(*part);
      parts_.outer.push_back(*part);
      return;
    }
    if (sup < c_ - w_out_ || c_ + w_out_ < Rational(0)) return;
    if (m >= hard_depth_limit(F_) || ++visited_ > kNodeBudget) {
      parts_.outer.push_back(*part);
      return;
    }
    const Rational third = cantor::rank_length(m + 1);
    node(p, m + 1, seg);
    for (const auto& pc : F_.gap_pieces(m + 1, p + third))
      if (auto gp = pc.seg.intersect(seg))
        classify_sublevel(pc.poly - Polynomial::constant(c_), *gp, w_in_, w_out_, tol_, parts_);
    node(p + third * Rational(2), m + 1, seg);
  }

  LevelParts& parts() { return parts_; }

 private:
  static constexpr std::size_t kNodeBudget = 1 << 20;
  const CounterexampleF& F_;
  const Rational& c_;
  const Rational& w_in_;
  const Rational& w_out_;
  const Rational& tol_;
  LevelParts parts_;
  std::size_t visited_ = 0;
};

}  // namespace

SublevelSet sublevel_set(const Primitive& F, const Segment& seg, const Rational& c, const Enclosure& threshold,
                         const Rational& max_width) {
  if (!domain_of(F).contains(seg)) throw Error(ErrorKind::OutOfDomain, "sublevel segment outside domain");
  if (threshold.lo().sign() < 0) throw Error(ErrorKind::InvalidArgument, "negative threshold");
  const Rational tol = max_width / Rational(1 << 12);
  LevelParts parts = std::visit(
      [&](const auto& f) -> LevelParts {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CounterexampleF>) {
          CantorSublevel s(f, c, threshold.lo(), threshold.hi(), tol);
          s.node(Rational(0), 0, seg);
          return std::move(s.parts());
        } else {
          LevelParts out;
          for (const auto& pc : f.pieces())
            if (auto part = pc.seg.intersect(seg))
              classify_sublevel(pc.poly - Polynomial::constant(c), *part, threshold.lo(), threshold.hi(), tol, out);
          return out;
        }
      },
      F);
  SublevelSet out{IntervalUnion(std::move(parts.inner)), IntervalUnion(std::move(parts.outer))};
  if (union_measure(out.outer) - union_measure(out.inner) > max_width)
    throw Error(ErrorKind::WidthUnachievable, "sublevel set undecided on more than max_width");
  return out;
}

}  // namespace lrgauge
