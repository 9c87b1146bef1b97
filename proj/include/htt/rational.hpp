#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace htt {

/// Exact scalar used throughout the library.
using Rational = mpq_class;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Canonical "p/q" text, or "p" when the denominator is one.
inline std::string format_rational(const Rational& q) { return q.get_str(10); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline int parity(int degree) { return ((degree % 2) + 2) % 2; }

inline int sign_of_parity(int p) { return (p & 1) ? -1 : 1; }

}  // namespace htt
