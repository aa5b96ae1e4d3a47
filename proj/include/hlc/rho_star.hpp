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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hlc::rho_star {

inline constexpr std::uint64_t kExactMax = 20;
inline constexpr std::uint64_t kGreedyDefaultCap = 100'000;

// rho*(m): the largest number of integers coprime to m! in a window
// (n, n + m]. Coprimality to m! is coprimality to every prime <= m, so the
// window count is periodic in n with period P = product of primes <= m.
struct RhoStarResult {
  std::uint64_t m = 0;
  std::uint64_t value = 0;
  bool exact = false;
  // n in [0, P) whose window (n, n + m] attains `value`.
  mpz_class witness_shift = 0;
  std::uint64_t pi_m = 0;

  std::int64_t gap() const { return static_cast<std::int64_t>(value) - static_cast<std::int64_t>(pi_m); }
};

// Exhaustive maximum over n in [0, P) for 1 <= m <= 20. Ties resolve to the
// smallest n.
RhoStarResult rho_star_exact(std::uint64_t m, unsigned shards = 1);

// A verified lower bound: the better of a greedy admissible window and the
// window (m, 2m].
RhoStarResult rho_star_greedy(std::uint64_t m, std::uint64_t cap = kGreedyDefaultCap);

// value(rho_star_greedy(m)) - pi(m).
std::int64_t rho_pi_gap(std::uint64_t m, std::uint64_t cap = kGreedyDefaultCap);

// Number of k in (shift, shift + m] with no prime factor <= m.
std::uint64_t count_window(std::uint64_t m, const mpz_class& shift);

// Product of the primes <= m.
mpz_class primorial(std::uint64_t m);

std::vector<std::uint64_t> primes_up_to(std::uint64_t m);

// "m,value,exact,witness_shift,pi_m,gap"
std::string csv_header();
std::string csv_row(const RhoStarResult& r);

}  // namespace hlc::rho_star
