#include "lrgauge/rational.hpp"

#include <cctype>

#include "lrgauge/error.hpp"

namespace lrgauge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::WidthUnachievable: return "WidthUnachievable";
    case ErrorKind::ZeroLength: return "ZeroLength";
    case ErrorKind::TagSearchFailed: return "TagSearchFailed";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Error";
}

namespace {

mpz_class pow_z(long base, unsigned long exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return out;
}

// Unsigned decimal with optional fraction and exponent, e.g. "12", "0.25", "1e-9".
mpq_class parse_decimal(std::string_view text, std::string_view whole) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty number in '" + std::string(whole) + "'");
  std::size_t i = 0;
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw Error(ErrorKind::Parse, "no digits in '" + std::string(whole) + "'");
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E')
      throw Error(ErrorKind::Parse, "unexpected character in '" + std::string(whole) + "'");
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    if (i == text.size()) throw Error(ErrorKind::Parse, "bad exponent in '" + std::string(whole) + "'");
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(ErrorKind::Parse, "bad exponent in '" + std::string(whole) + "'");
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 100000) throw Error(ErrorKind::Parse, "exponent too large");
    }
    if (neg) exponent = -exponent;
  }
  mpq_class q{mpz_class(digits, 10)};
  long net = exponent - scale;
  if (net > 0) q *= pow_z(10, static_cast<unsigned long>(net));
  if (net < 0) q /= pow_z(10, static_cast<unsigned long>(-net));
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  mpq_class q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpq_class num = parse_decimal(s.substr(0, slash), text);
    mpq_class den = parse_decimal(s.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    q = num / den;
  } else {
    q = parse_decimal(s, text);
  }
  if (negative) q = -q;
  return Rational(q);
}

Rational Rational::inverse_power(long base, unsigned long exp) {
  return Rational(mpq_class(mpz_class(1), pow_z(base, exp)));
}

Rational Rational::power(long base, unsigned long exp) { return Rational(mpq_class(pow_z(base, exp))); }

Rational Rational::pow(unsigned k) const {
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), q_.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), q_.get_den_mpz_t(), k);
  return Rational(out);
}

mpz_class Rational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

mpz_class Rational::ceil() const {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  mpz_class scale = pow_z(10, static_cast<unsigned long>(digits));
  mpq_class scaled = ::abs(q_) * scale + mpq_class(1, 2);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
  if (sign() < 0 && n != 0) out.insert(0, "-");
  return out;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational round_down(const Rational& q, unsigned bits) {
  mpz_class scale = mpz_class(1) << bits;
  Rational scaled = q * Rational(mpq_class(scale));
  return Rational(mpq_class(scaled.floor(), scale));
}

Rational round_up(const Rational& q, unsigned bits) {
  mpz_class scale = mpz_class(1) << bits;
  Rational scaled = q * Rational(mpq_class(scale));
  return Rational(mpq_class(scaled.ceil(), scale));
}

}  // namespace lrgauge
