#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "gmtame/errors.hpp"

namespace gmtame {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "-p", "p/q"; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto ok = !s.empty() && s.find_first_not_of("+-0123456789/") == std::string::npos;
  Rational q;
  if (!ok || s.front() == '/' || s.back() == '/' || q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
    throw ParseError("malformed rational '" + s + "'", 0);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Representative of q modulo 1 in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

}  // namespace gmtame
