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

#include <cmath>
#include <limits>
#include <random>

#include "cubeflag/digest.hpp"
#include "cubeflag/rational.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace cubeflag {

TEST_SUITE("rational") {
  TEST_CASE("parse and print") {
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK(to_string(parse_rational("-2")) == "-2/1");
    CHECK(to_string(ratio(2, 4)) == "1/2");
    CHECK(to_string(ratio(0, 5)) == "0/1");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK_THROWS_AS(ratio(1, 0), Error);
    CHECK(to_decimal(ratio(2, 3), 5) == "0.66667");
  }

  TEST_CASE("rationalize examples") {
    CHECK(rationalize(0.25, 10) == ratio(1, 4));
    CHECK(rationalize(0.6666667, 100) == ratio(2, 3));
    CHECK(rationalize(-0.6666667, 100) == ratio(-2, 3));
    CHECK(rationalize(3.0, 1) == 3);
    CHECK_THROWS_AS(rationalize(std::numeric_limits<double>::quiet_NaN(), 10), Error);
    CHECK_THROWS_AS(rationalize(std::numeric_limits<double>::infinity(), 10), Error);
    CHECK_THROWS_AS(rationalize(0.5, 0), Error);
  }

  TEST_CASE("rationalize matches an exhaustive denominator scan") {
    CHECK(rationalize(0.6068, 2000) == oracle::scan_best_approximation(0.6068, 2000));
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 400; ++trial) {
      const double x = dist(rng);
      const long bound = 1 + static_cast<long>(rng() % 600);
      const Rational got = rationalize(x, bound);
      const Rational want = oracle::scan_best_approximation(x, bound);
      CHECK(got.get_den() <= bound);
      CHECK(abs(got - Rational(x)) == abs(want - Rational(x)));
    }
  }

  TEST_CASE("rationalize at the default bound is a best approximation") {
    const Rational r = rationalize(0.6068, 1000000);
    CHECK(r == ratio(1517, 2500));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const double x = dist(rng);
      const Rational got = rationalize(x, 1000000);
      const Rational err = abs(got - Rational(x));
      // Spot check the denominators closest to the bound.
      for (long q = 999000; q <= 1000000; ++q) {
        const Rational scaled = Rational(x) * q;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        for (const mpz_class& p : {fl, mpz_class(fl + 1)}) CHECK(abs(Rational(p, q) - Rational(x)) >= err);
      }
    }
  }

  TEST_CASE("quadratic field arithmetic") {
    const QuadRational r2 = QuadRational::sqrt2();
    CHECK(r2 * r2 == QuadRational(2));
    const QuadRational x(ratio(3, 2), ratio(1, 2));
    CHECK((x / x) == QuadRational(1));
    CHECK((x - x).is_zero());
    CHECK(to_radical_string(x) == "(3+√2)/2");
    CHECK(to_radical_string(QuadRational(ratio(-1, 2), ratio(1, 2))) == "(-1+√2)/2");
    CHECK(to_radical_string(QuadRational(Rational(2))) == "2");
    CHECK(std::abs(x.to_double() - (3 + std::sqrt(2.0)) / 2) < 1e-15);
    CHECK_THROWS(x / QuadRational());
  }

  TEST_CASE("quadratic sign agrees with 100-bit evaluation") {
    std::mt19937_64 rng(31);
    // Near-cancelling pairs from convergents of sqrt(2).
    const long conv[][2] = {{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}, {99, 70}, {239, 169},
                            {577, 408}, {1393, 985}, {3363, 2378}, {665857, 470832}};
    for (auto [p, q] : conv) {
      for (int s : {1, -1}) {
        const Rational a(s * p);
        const Rational b(-s * q);
        CHECK(QuadRational(a, b).sign() == oracle::sign_100bit(a, b));
      }
    }
    for (int trial = 0; trial < 2000; ++trial) {
      const long p1 = static_cast<long>(rng() % 20001) - 10000;
      const long q1 = 1 + static_cast<long>(rng() % 1000);
      const long p2 = static_cast<long>(rng() % 20001) - 10000;
      const long q2 = 1 + static_cast<long>(rng() % 1000);
      const Rational a = ratio(p1, q1);
      const Rational b = ratio(p2, q2);
      CHECK(QuadRational(a, b).sign() == oracle::sign_100bit(a, b));
    }
    CHECK(QuadRational().sign() == 0);
  }

  TEST_CASE("sha256 digests") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}

}  // namespace cubeflag
