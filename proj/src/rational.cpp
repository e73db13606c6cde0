#include "turan/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace turan {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
  }
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    }
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Integer num = Integer(std::string(whole), 10) * den;
    if (!frac.empty()) num += Integer(std::string(frac), 10);
    Rational r(negative ? Integer(-num) : num, den);
    r.canonicalize();
    return r;
  }

  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(value);
}

double to_double(const Rational& value) { return value.get_d(); }

std::size_t bit_size(const Rational& value) {
  std::size_t n = mpz_sizeinbase(value.get_num_mpz_t(), 2);
  std::size_t d = mpz_sizeinbase(value.get_den_mpz_t(), 2);
  return n > d ? n : d;
}

Integer floor_of(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational reduce_mod_one(const Rational& value) {
  Rational shifted = value + Rational(1, 2);
  Rational r = shifted - Rational(floor_of(shifted));
  return r - Rational(1, 2);
}

double reduce_mod_one(double value) {
  double r = value - std::floor(value + 0.5);
  if (r >= 0.5) r -= 1.0;
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace turan
