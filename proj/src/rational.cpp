#include "capcover/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace capcover {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }
  return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational out = num / den;
    out.canonicalize();
    return out;
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    mpz_class magnitude = parse_integer(exp_part, text);
    if (magnitude > 4096) throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    exponent = magnitude.get_si() * (exp_negative ? -1 : 1);
    s = s.substr(0, e);
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("not a number: '" + std::string(text) + "'");

  mpz_class mantissa = parse_integer(std::string(int_part.empty() ? "0" : int_part) + std::string(frac_part), text);
  exponent -= static_cast<long>(frac_part.size());

  Rational out(mantissa);
  if (exponent > 0) out *= Rational(pow10(static_cast<unsigned long>(exponent)));
  if (exponent < 0) out /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

std::string to_decimal(const Rational& r, int digits) {
  mpz_class scale = pow10(static_cast<unsigned long>(digits));
  Rational scaled = abs(r) * Rational(scale);
  // round half away from zero
  mpz_class q = scaled.get_num() * 2 + scaled.get_den();
  mpz_class d = scaled.get_den() * 2;
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());

  std::string body = rounded.get_str(10);
  if (digits > 0) {
    if (body.size() <= static_cast<size_t>(digits)) body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<size_t>(digits), ".");
  }
  bool negative = r < 0 && rounded != 0;
  return negative ? "-" + body : body;
}

Rational snapshot(double value, int digits) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot snapshot a non-finite value");
  double scale = std::pow(10.0, digits);
  double scaled = std::nearbyint(value * scale);
  Rational out(mpz_class(scaled), pow10(static_cast<unsigned long>(digits)));
  out.canonicalize();
  return out;
}

Rational floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

Rational ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

Rational pow2(long k) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  Rational out = k < 0 ? Rational(mpz_class(1), p) : Rational(p);
  out.canonicalize();
  return out;
}

long floor_log2(const Rational& r) {
  if (r < 1) return -1;
  long j = 0;
  Rational power = 2;
  while (power <= r) {
    power *= 2;
    ++j;
  }
  return j;
}

Rational pow2_ceil(const Rational& r) {
  if (r <= 0) throw std::invalid_argument("pow2_ceil needs a positive value");
  Rational power = 1;
  long k = 0;
  if (power < r) {
    while (power < r) {
      power *= 2;
      ++k;
    }
  } else {
    while (power / 2 >= r) {
      power /= 2;
      --k;
    }
  }
  return pow2(k);
}

}  // namespace capcover
