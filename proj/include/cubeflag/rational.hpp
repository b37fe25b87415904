// Copyright 2026 The cubeflag Authors
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

// Exact scalars: GMP-backed rationals and the quadratic field Q(sqrt 2).

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cubeflag {

using Rational = mpq_class;
using Integer = mpz_class;

// num/den in lowest terms. Throws on den == 0.
Rational ratio(long num, long den);

// Accepts "p/q" or "p" with an optional leading '-'.
Rational parse_rational(std::string_view text);
// Always "p/q", reduced, q > 0.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Exact decimal rounding of r to `digits` significant digits (half away from
// zero), rendered like printf's %g without trailing zeros.
std::string to_decimal(const Rational& r, int digits = 17);

// Closest p/q to x with 1 <= q <= max_denominator; ties go to the smaller q.
// Throws on non-finite x or max_denominator < 1.
Rational rationalize(double x, const Integer& max_denominator);

// a + b*sqrt(2) with rational a, b.
class QuadRational {
 public:
  QuadRational() = default;
  QuadRational(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadRational(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  static QuadRational sqrt2() { return QuadRational(0, 1); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  // Exact: sign of a + b*sqrt2 compares a^2 against 2 b^2 when signs differ.
  int sign() const;
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  double to_double() const;
  std::string to_string() const;

  QuadRational& operator+=(const QuadRational& o);
  QuadRational& operator-=(const QuadRational& o);
  QuadRational& operator*=(const QuadRational& o);
  QuadRational& operator/=(const QuadRational& o);
  QuadRational operator-() const { return QuadRational(-a_, -b_); }

  friend QuadRational operator+(QuadRational x, const QuadRational& y) { return x += y; }
  friend QuadRational operator-(QuadRational x, const QuadRational& y) { return x -= y; }
  friend QuadRational operator*(QuadRational x, const QuadRational& y) { return x *= y; }
  friend QuadRational operator/(QuadRational x, const QuadRational& y) { return x /= y; }
  friend bool operator==(const QuadRational& x, const QuadRational& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const QuadRational& x, const QuadRational& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadRational& x, const QuadRational& y) { return y < x; }
  friend bool operator<=(const QuadRational& x, const QuadRational& y) { return !(y < x); }
  friend bool operator>=(const QuadRational& x, const QuadRational& y) { return !(x < y); }

 private:
  Rational a_;
  Rational b_;
};

// "(3+√2)/2" style: (A + B√2)/C with integers A, B, C.
std::string to_radical_string(const QuadRational& q);

// Uniform access for code templated over {Rational, QuadRational}.
inline int sign_of(const Rational& r) { return sgn(r); }
inline int sign_of(const QuadRational& q) { return q.sign(); }
inline double as_double(const Rational& r) { return to_double(r); }
inline double as_double(const QuadRational& q) { return q.to_double(); }

}  // namespace cubeflag
