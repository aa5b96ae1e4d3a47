// Copyright 2026 The hlc-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "hlc/error.hpp"
#include "hlc/rho_star.hpp"
#include "hlc/sieve.hpp"
#include "oracles.hpp"

namespace hlc::rho_star {
namespace {

std::uint64_t pi_small(std::uint64_t x) { return oracle::pi_td(x); }

TEST(RhoStar, SmallExamples) {
  EXPECT_EQ(rho_star_exact(1).value, 1u);
  EXPECT_EQ(rho_star_exact(2).value, 1u);
  EXPECT_EQ(rho_star_exact(4).value, 2u);
  EXPECT_EQ(rho_star_greedy(1).value, 1u);
  EXPECT_EQ(rho_pi_gap(2), 0);
  EXPECT_EQ(rho_pi_gap(4), 0);
  EXPECT_GE(rho_pi_gap(20), -4);
  EXPECT_GE(rho_star_greedy(20).value, 4u);
}

TEST(RhoStar, ExactMatchesBruteForce) {
  for (std::uint64_t m = 1; m <= 12; ++m) {
    const auto r = rho_star_exact(m);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.value, oracle::rho_star_brute(m)) << m;
    EXPECT_EQ(r.pi_m, pi_small(m));
  }
}

TEST(RhoStar, ExactDominatesPrimeWindow) {
  for (std::uint64_t m = 1; m <= 20; ++m) {
    const auto r = rho_star_exact(m);
    EXPECT_GE(r.value, pi_small(2 * m) - pi_small(m)) << m;
    ASSERT_TRUE(r.witness_shift.fits_ulong_p());
    EXPECT_EQ(oracle::window_gcd_count(m, r.witness_shift.get_ui()), r.value) << m;
    EXPECT_EQ(count_window(m, r.witness_shift), r.value);
    EXPECT_LT(r.witness_shift, primorial(m));
  }
}

TEST(RhoStar, GreedyIsAVerifiedLowerBound) {
  for (std::uint64_t m = 1; m <= 20; ++m) {
    const auto g = rho_star_greedy(m);
    EXPECT_FALSE(g.exact);
    EXPECT_LE(g.value, rho_star_exact(m).value) << m;
    EXPECT_EQ(count_window(m, g.witness_shift), g.value);
  }
  for (std::uint64_t m : {50u, 100u, 500u, 2000u}) {
    const auto g = rho_star_greedy(m);
    EXPECT_EQ(count_window(m, g.witness_shift), g.value) << m;
    EXPECT_GE(g.value, pi_small(2 * m) - pi_small(m));
    EXPECT_LT(g.witness_shift, primorial(m));
  }
}

TEST(RhoStar, ShiftPeriodicity) {
  // Counts at n and n + P agree, so [0, P) covers every positive shift.
  for (std::uint64_t m = 1; m <= 12; ++m) {
    const std::uint64_t period = primorial(m).get_ui();
    for (std::uint64_t n = 0; n < period; n += (period > 500 ? period / 500 : 1)) {
      ASSERT_EQ(oracle::window_gcd_count(m, n), oracle::window_gcd_count(m, n + period)) << m << " " << n;
    }
  }
}

TEST(RhoStar, ShardedExactIsIdentical) {
  for (std::uint64_t m : {13u, 17u}) {
    const auto a = rho_star_exact(m, 1);
    const auto b = rho_star_exact(m, 3);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness_shift, b.witness_shift);
  }
}

TEST(RhoStar, Errors) {
  EXPECT_THROW(rho_star_exact(21), CapacityError);
  EXPECT_THROW(rho_star_exact(0), DomainError);
  EXPECT_THROW(rho_star_greedy(200, 100), CapacityError);
}

TEST(RhoStar, Primorial) {
  EXPECT_EQ(primorial(1), 1);
  EXPECT_EQ(primorial(10), 210);
  EXPECT_EQ(primorial(20), 9'699'690);
  EXPECT_EQ(primes_up_to(20), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
}

TEST(RhoStar, Csv) {
  EXPECT_EQ(csv_header(), "m,value,exact,witness_shift,pi_m,gap");
  EXPECT_EQ(csv_row(rho_star_exact(4)).rfind("4,2,", 0), 0u);
}

}  // namespace
}  // namespace hlc::rho_star
