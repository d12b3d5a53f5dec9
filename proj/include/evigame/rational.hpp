// Copyright 2026 The evigame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact rational arithmetic used throughout the solvers. All equilibrium
// conditions are evaluated in this type; floating point only appears in
// shock integrals and Monte Carlo estimates.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evigame {

using Rational = mpq_class;

/// Parses "7", "-3/4" or a plain decimal such as "0.125" into an exact value.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  };
  if (text.empty()) return fail();
  std::string s(text);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    auto is_int = [](const std::string& t, bool allow_sign) {
      if (t.empty()) return false;
      size_t i = 0;
      if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    if (!is_int(num, true) || !is_int(den, false)) return fail();
    if (num[0] == '+') num = num.substr(1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) return fail();
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      return fail();
    }
  }
  if (!seen_digit) return fail();
  mpz_class n(digits, 10);
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
  Rational r(n, d);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

/// "num/den" in lowest terms, or just "num" for integers.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// n/d in lowest terms.
inline Rational ratio(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational r{mpz_class(n), mpz_class(d)};
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rational(x);
}

/// Closest rational with denominator at most `max_den` (continued fractions).
inline Rational limit_denominator(const Rational& x, const mpz_class& max_den) {
  if (max_den < 1) throw std::invalid_argument("max_den must be positive");
  if (x.get_den() <= max_den) return x;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class n = x.get_num(), d = x.get_den();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpz_class q2 = q0 + a * q1;
    if (q2 > max_den) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class r = n - a * d;
    n = d;
    d = r;
  }
  mpz_class k = (max_den - q0) / q1;
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  Rational e1 = abs(bound2 - x), e2 = abs(bound1 - x);
  return e1 <= e2 ? bound2 : bound1;
}

/// Float-to-exact rounding used before handing a numeric limit to the
/// exact predicates.
inline Rational rationalize(double x, long max_den = 1000000) {
  return limit_denominator(from_double(x), mpz_class(max_den));
}

inline Rational rationalize(const Rational& x, long max_den = 1000000) {
  return limit_denominator(x, mpz_class(max_den));
}

}  // namespace evigame
