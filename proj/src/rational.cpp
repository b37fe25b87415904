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

#include "cubeflag/rational.hpp"

#include <cmath>
#include <utility>

#include "cubeflag/error.hpp"

namespace cubeflag {

Rational ratio(long num, long den) {
  if (den == 0) throw Error(ErrorKind::kBadInput, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-') {
    bad_input("malformed rational '" + std::string(text) + "'");
  }
  Rational r;
  r.get_num() = Integer(std::string(num));
  r.get_den() = Integer(std::string(den));
  if (r.get_den() == 0) bad_input("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

std::string to_decimal(const Rational& r, int digits) {
  if (sgn(r) == 0) return "0";
  const bool neg = sgn(r) < 0;
  const Rational x = abs(r);
  // exponent e with 10^e <= x < 10^(e+1)
  long e = static_cast<long>(std::floor(std::log10(x.get_d())));
  auto pow10 = [](long k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return p;
  };
  auto scaled = [&](long ex) {
    // x * 10^(digits-1-ex)
    const long shift = digits - 1 - ex;
    Rational s = x;
    if (shift >= 0) {
      s *= Rational(pow10(shift));
    } else {
      s /= Rational(pow10(-shift));
    }
    return s;
  };
  // log10 of a double can be off by one near powers of ten.
  while (scaled(e) < Rational(pow10(digits - 1))) --e;
  while (scaled(e) >= Rational(pow10(digits))) ++e;
  const Rational s = scaled(e);
  Integer mant = (2 * s.get_num() + s.get_den()) / (2 * s.get_den());
  if (mant == pow10(digits)) {
    mant /= 10;
    ++e;
  }
  std::string ds = mant.get_str();
  std::string out = neg ? "-" : "";
  if (e >= -5 && e < digits) {
    if (e >= 0) {
      std::string ip = ds.substr(0, static_cast<std::size_t>(e) + 1);
      std::string fp = ds.substr(static_cast<std::size_t>(e) + 1);
      while (!fp.empty() && fp.back() == '0') fp.pop_back();
      out += ip;
      if (!fp.empty()) out += "." + fp;
    } else {
      std::string fp = std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
      while (!fp.empty() && fp.back() == '0') fp.pop_back();
      out += "0." + fp;
    }
  } else {
    std::string fp = ds.substr(1);
    while (!fp.empty() && fp.back() == '0') fp.pop_back();
    out += ds.substr(0, 1);
    if (!fp.empty()) out += "." + fp;
    out += (e < 0 ? "e-" : "e+");
    const long ae = e < 0 ? -e : e;
    if (ae < 10) out += "0";
    out += std::to_string(ae);
  }
  return out;
}

Rational rationalize(double x, const Integer& max_denominator) {
  if (!std::isfinite(x)) bad_input("rationalize: non-finite input");
  if (max_denominator < 1) bad_input("rationalize: max_denominator must be >= 1");
  const Rational exact(x);
  if (exact.get_den() <= max_denominator) return exact;

  // Continued fraction of |x| with convergents p/q; stop before q exceeds
  // the bound, then compare the last convergent with the best semiconvergent.
  const bool neg = sgn(exact) < 0;
  Integer num = abs(exact.get_num());
  Integer den = exact.get_den();
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (den != 0) {
    const Integer a = num / den;
    const Integer q2 = a * q1 + q0;
    if (q2 > max_denominator) {
      const Integer t = (max_denominator - q0) / q1;
      const Rational conv(p1, q1);
      const Rational semi(t * p1 + p0, t * q1 + q0);
      const Rational ax = abs(exact);
      const int c = cmp(abs(semi - ax), abs(conv - ax));
      Rational best = (c < 0 || (c == 0 && semi.get_den() < conv.get_den())) ? semi : conv;
      best.canonicalize();
      return neg ? Rational(-best) : best;
    }
    const Integer p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer rem = num - a * den;
    num = den;
    den = rem;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

int QuadRational::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt2 have opposite signs: compare a^2 with 2 b^2.
  const Rational lhs = a_ * a_;
  const Rational rhs = 2 * b_ * b_;
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

double QuadRational::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(2.0); }

std::string QuadRational::to_string() const {
  return cubeflag::to_string(a_) + " + " + cubeflag::to_string(b_) + "*sqrt(2)";
}

QuadRational& QuadRational::operator+=(const QuadRational& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadRational& QuadRational::operator-=(const QuadRational& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadRational& QuadRational::operator*=(const QuadRational& o) {
  Rational na = a_ * o.a_ + 2 * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QuadRational& QuadRational::operator/=(const QuadRational& o) {
  const Rational norm = o.a_ * o.a_ - 2 * o.b_ * o.b_;
  if (sgn(norm) == 0) throw std::domain_error("division by zero in Q(sqrt2)");
  *this *= QuadRational(o.a_, -o.b_);
  a_ /= norm;
  b_ /= norm;
  return *this;
}

std::string to_radical_string(const QuadRational& q) {
  Integer c;
  mpz_lcm(c.get_mpz_t(), q.a().get_den_mpz_t(), q.b().get_den_mpz_t());
  const Integer A = q.a().get_num() * (c / q.a().get_den());
  const Integer B = q.b().get_num() * (c / q.b().get_den());
  std::string out;
  int terms = 0;
  if (A != 0 || B == 0) {
    out = A.get_str();
    ++terms;
  }
  if (B != 0) {
    const Integer absb = abs(B);
    if (terms) out += B < 0 ? "-" : "+";
    else if (B < 0) out += "-";
    out += (absb == 1 ? std::string() : absb.get_str()) + "\u221a2";
    ++terms;
  }
  if (c == 1) return out;
  return (terms > 1 ? "(" + out + ")" : out) + "/" + c.get_str();
}

}  // namespace cubeflag
