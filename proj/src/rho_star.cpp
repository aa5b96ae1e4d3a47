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

#include "hlc/rho_star.hpp"

#include <algorithm>
#include <mutex>
#include <string>
#include <thread>

#include "hlc/error.hpp"

namespace hlc::rho_star {
namespace {

std::uint64_t count_primes_leq(const std::vector<std::uint64_t>& primes, std::uint64_t x) {
  return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

struct Best {
  std::uint64_t value = 0;
  std::uint64_t shift = 0;
};

// Greedy admissible window on (-h, m - h], h = floor(m/2): for each prime
// p <= m, strike the residue class holding the fewest survivors (smallest
// residue on ties). Returns the survivor count and the struck residues.
std::uint64_t greedy_window(std::uint64_t m, const std::vector<std::uint64_t>& small, std::vector<std::uint64_t>& struck) {
  const std::int64_t h = static_cast<std::int64_t>(m / 2);
  std::vector<std::int64_t> survivors;
  survivors.reserve(m);
  for (std::int64_t t = -h + 1; t <= static_cast<std::int64_t>(m) - h; ++t) survivors.push_back(t);
  std::vector<std::uint64_t> counts;
  struck.clear();
  for (std::uint64_t p : small) {
    counts.assign(p, 0);
    const auto ip = static_cast<std::int64_t>(p);
    for (std::int64_t t : survivors) ++counts[static_cast<std::size_t>(((t % ip) + ip) % ip)];
    const auto it = std::min_element(counts.begin(), counts.end());
    const auto r = static_cast<std::int64_t>(it - counts.begin());
    struck.push_back(static_cast<std::uint64_t>(r));
    if (*it == 0) continue;
    std::erase_if(survivors, [&](std::int64_t t) { return ((t % ip) + ip) % ip == r; });
  }
  return survivors.size();
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  if (m < 2) return out;
  std::vector<bool> composite(m + 1, false);
  for (std::uint64_t i = 2; i <= m; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= m; j += i) composite[j] = true;
  }
  return out;
}

mpz_class primorial(std::uint64_t m) {
  mpz_class p = 1;
  for (std::uint64_t q : primes_up_to(m)) p *= static_cast<unsigned long>(q);
  return p;
}

std::uint64_t count_window(std::uint64_t m, const mpz_class& shift) {
  if (m == 0) return 0;
  std::vector<bool> struck(m + 1, false);  // offsets 1..m
  for (std::uint64_t p : primes_up_to(m)) {
    const std::uint64_t r = mpz_fdiv_ui(shift.get_mpz_t(), static_cast<unsigned long>(p));
    // shift + j == 0 (mod p)  <=>  j == -r (mod p)
    std::uint64_t j = (p - r) % p;
    if (j == 0) j = p;
    for (; j <= m; j += p) struck[j] = true;
  }
  std::uint64_t count = 0;
  for (std::uint64_t j = 1; j <= m; ++j) count += struck[j] ? 0 : 1;
  return count;
}

RhoStarResult rho_star_exact(std::uint64_t m, unsigned shards) {
  if (m < 1) throw DomainError("rho_star needs m >= 1");
  if (m > kExactMax) {
    throw CapacityError("rho_star_exact is limited to m <= 20; use rho_star_greedy for m = " + std::to_string(m));
  }
  if (shards == 0) throw DomainError("shards must be positive");
  const auto small = primes_up_to(m);
  std::uint64_t period = 1;
  for (auto p : small) period *= p;

  // coprime[k] for k in [0, period + m].
  std::vector<std::uint8_t> coprime(period + m + 1, 1);
  for (auto p : small) {
    for (std::uint64_t k = 0; k < coprime.size(); k += p) coprime[k] = 0;
  }

  const unsigned parts = static_cast<unsigned>(std::min<std::uint64_t>(shards, period));
  std::vector<Best> best(parts);
  auto work = [&](unsigned s) {
    const std::uint64_t lo = period * s / parts;
    const std::uint64_t hi = period * (s + 1) / parts;  // exclusive
    std::uint64_t count = 0;
    for (std::uint64_t k = lo + 1; k <= lo + m; ++k) count += coprime[k];
    Best b{count, lo};
    for (std::uint64_t n = lo + 1; n < hi; ++n) {
      count += coprime[n + m];
      count -= coprime[n];
      if (count > b.value) b = {count, n};
    }
    best[s] = b;
  };
  if (parts == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned s = 0; s < parts; ++s) threads.emplace_back(work, s);
    for (auto& t : threads) t.join();
  }
  Best overall = best[0];
  for (unsigned s = 1; s < parts; ++s) {
    if (best[s].value > overall.value) overall = best[s];
  }

  RhoStarResult r;
  r.m = m;
  r.value = overall.value;
  r.exact = true;
  r.witness_shift = static_cast<unsigned long>(overall.shift);
  r.pi_m = small.size();
  return r;
}

RhoStarResult rho_star_greedy(std::uint64_t m, std::uint64_t cap) {
  if (m < 1) throw DomainError("rho_star needs m >= 1");
  if (m > cap) {
    throw CapacityError("rho_star_greedy: m = " + std::to_string(m) + " exceeds the cap " + std::to_string(cap));
  }
  const auto primes = primes_up_to(2 * m);
  const std::uint64_t pi_m = count_primes_leq(primes, m);
  const std::vector<std::uint64_t> small(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(pi_m));
  const mpz_class period = primorial(m);

  std::vector<std::uint64_t> struck;
  const std::uint64_t greedy = greedy_window(m, small, struck);

  // CRT: n' == -r_p (mod p) makes t + n' divisible by p exactly when t == r_p.
  mpz_class shift = 0;
  mpz_class modulus = 1;
  for (std::size_t i = 0; i < small.size(); ++i) {
    const auto p = static_cast<unsigned long>(small[i]);
    const unsigned long target = static_cast<unsigned long>((small[i] - struck[i]) % small[i]);
    const unsigned long have = mpz_fdiv_ui(shift.get_mpz_t(), p);
    const unsigned long mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
    mpz_class inv;
    mpz_class mp = mod_p;
    mpz_class pp = p;
    mpz_invert(inv.get_mpz_t(), mp.get_mpz_t(), pp.get_mpz_t());
    const unsigned long delta = static_cast<unsigned long>((target + p - have) % p);
    const mpz_class step = (mpz_class(delta) * inv) % pp;
    shift += modulus * step;
    modulus *= p;
  }
  // The window (n' - h, n' - h + m] holds the survivors.
  mpz_class window_start = shift - static_cast<unsigned long>(m / 2);
  mpz_fdiv_r(window_start.get_mpz_t(), window_start.get_mpz_t(), period.get_mpz_t());

  const std::uint64_t shifted_primes = count_primes_leq(primes, 2 * m) - pi_m;

  RhoStarResult r;
  r.m = m;
  r.exact = false;
  r.pi_m = pi_m;
  if (greedy >= shifted_primes) {
    r.value = greedy;
    r.witness_shift = window_start;
  } else {
    r.value = shifted_primes;
    mpz_class w = static_cast<unsigned long>(m);
    mpz_fdiv_r(w.get_mpz_t(), w.get_mpz_t(), period.get_mpz_t());
    r.witness_shift = w;
  }
  return r;
}

std::int64_t rho_pi_gap(std::uint64_t m, std::uint64_t cap) { return rho_star_greedy(m, cap).gap(); }

std::string csv_header() { return "m,value,exact,witness_shift,pi_m,gap"; }

std::string csv_row(const RhoStarResult& r) {
  return std::to_string(r.m) + "," + std::to_string(r.value) + "," + (r.exact ? "1" : "0") + "," +
         r.witness_shift.get_str() + "," + std::to_string(r.pi_m) + "," + std::to_string(r.gap());
}

}  // namespace hlc::rho_star
