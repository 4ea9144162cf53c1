#pragma once

// Exact rational scalars and their text form.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jackchain {

using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (optional sign). The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ')) s.pop_back();
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t.front() == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Rational r;
  r.get_num() = mpz_class(num);
  r.get_den() = mpz_class(den);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

/// Canonical "p/q" with q > 0; integers keep the "/1".
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational rpow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1U) out *= b;
    exponent >>= 1U;
    if (exponent) b *= b;
  }
  return out;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline std::int64_t floor_to_int(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

}  // namespace jackchain
