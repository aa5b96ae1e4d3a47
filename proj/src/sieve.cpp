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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "hlc/error.hpp"
#include "hlc/numeric.hpp"
#include "hlc/sieve.hpp"
#include "hlc/simd/kernels.hpp"

namespace hlc {
namespace {

// Presieve covers 3*5*7*11*13 = 15015 odd positions. 15015 is odd, so the
// pattern repeats every 15015 * 64 bits at word granularity.
constexpr std::uint64_t kPresievePeriod = 15015;
constexpr std::uint64_t kPresieveWords = kPresievePeriod;  // 15015 * 64 bits / 64
constexpr std::uint64_t kPresieveMax = 13;
constexpr std::uint64_t kInv64ModPeriod = [] {
  for (std::uint64_t u = 1; u < kPresievePeriod; ++u) {
    if ((64 * u) % kPresievePeriod == 1) return u;
  }
  return std::uint64_t{0};
}();

class Presieve {
 public:
  explicit Presieve(std::size_t max_segment_words) {
    const std::size_t words = kPresieveWords + max_segment_words;
    pattern_.assign(words, ~std::uint64_t{0});
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
      // Odd number 2t+1 is divisible by p when t = (p-1)/2 mod p.
      for (std::uint64_t t = (p - 1) / 2; t < words * 64; t += p) {
        pattern_[t / 64] &= ~(std::uint64_t{1} << (t % 64));
      }
    }
  }

  // Copies the pattern for odd positions t0, t0+1, ... into out.
  void fill(std::uint64_t t0, std::span<std::uint64_t> out) const {
    const std::uint64_t u = ((t0 % kPresievePeriod) * kInv64ModPeriod) % kPresievePeriod;
    std::copy_n(pattern_.begin() + static_cast<std::ptrdiff_t>(u), out.size(), out.begin());
  }

  std::size_t max_words() const { return pattern_.size() - kPresieveWords; }

 private:
  std::vector<std::uint64_t> pattern_;
};

const Presieve& presieve_for(std::size_t words) {
  static std::mutex mu;
  static std::vector<std::unique_ptr<Presieve>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& p : cache) {
    if (p->max_words() >= words) return *p;
  }
  cache.push_back(std::make_unique<Presieve>(words));
  return *cache.back();
}

// Odd primes 17 <= p <= limit.
std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 17) return out;
  std::vector<bool> composite(limit / 2 + 1, false);  // index i -> 2i+1
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m / 2] = true;
  }
  for (std::uint64_t i = 8; 2 * i + 1 <= limit; ++i) {
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  return out;
}

// Odd positions covering [lo, hi]: position t stands for 2t+1.
struct OddSpan {
  std::uint64_t t_begin = 0;
  std::uint64_t t_end = 0;  // exclusive
  bool has_two = false;
};

OddSpan odd_span(std::uint64_t lo, std::uint64_t hi) {
  OddSpan s;
  s.has_two = lo <= 2 && hi >= 2;
  if (hi < 1 || lo > hi) return s;
  const std::uint64_t a = (lo % 2 == 1) ? lo : lo + 1;
  const std::uint64_t b = (hi % 2 == 1) ? hi : hi - 1;
  if (a > b) return s;
  s.t_begin = (a - 1) / 2;
  s.t_end = (b - 1) / 2 + 1;
  return s;
}

// Sieves odd positions [t0, t0 + nbits) into words, for numbers up to `hi`.
void sieve_window(std::uint64_t t0, std::uint64_t nbits, std::span<const std::uint32_t> primes,
                  const Presieve& pre, std::span<std::uint64_t> words) {
  const std::size_t nwords = static_cast<std::size_t>((nbits + 63) / 64);
  auto out = words.first(nwords);
  pre.fill(t0, out);

  const std::uint64_t first = 2 * t0 + 1;
  const std::uint64_t last = 2 * (t0 + nbits - 1) + 1;

  // The presieve struck 3..13 themselves and 1 is not prime.
  if (first <= kPresieveMax) {
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
      if (p >= first && p <= last) {
        std::uint64_t j = (p - first) / 2;
        out[j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
    if (first == 1) out[0] &= ~std::uint64_t{1};
  }

  for (std::uint32_t p32 : primes) {
    const std::uint64_t p = p32;
    const std::uint64_t sq = p * p;
    if (sq > last) break;
    std::uint64_t m = std::max(sq, ((first + p - 1) / p) * p);
    if (m % 2 == 0) m += p;
    std::uint64_t j = (m - first) / 2;
    std::uint64_t* w = out.data();
    for (; j < nbits; j += p) w[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
  }

  if (nbits % 64 != 0) out[nwords - 1] &= (std::uint64_t{1} << (nbits % 64)) - 1;
}

// Splits odd positions [b, e) into `parts` contiguous chunks aligned to `align`.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split(std::uint64_t b, std::uint64_t e, unsigned parts,
                                                           std::uint64_t align) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (b >= e) return out;
  const std::uint64_t total = e - b;
  std::uint64_t chunk = (total + parts - 1) / parts;
  chunk = std::max<std::uint64_t>(align, (chunk + align - 1) / align * align);
  for (std::uint64_t s = b; s < e; s += chunk) out.emplace_back(s, std::min(e, s + chunk));
  return out;
}

template <typename Fn>
void run_parallel(std::size_t n, Fn&& fn) {
  if (n <= 1) {
    if (n == 1) fn(0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(n);
  std::exception_ptr failure;
  std::mutex mu;
  for (std::size_t i = 0; i < n; ++i) {
    threads.emplace_back([&, i] {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Rosser-Schoenfeld style upper bound for p_k, k >= 6.
std::uint64_t nth_prime_upper(std::uint64_t k) {
  if (k < 6) return 13;
  const long double lk = std::log(static_cast<long double>(k));
  return static_cast<std::uint64_t>(k * (lk + std::log(lk))) + 1;
}

}  // namespace

void SieveConfig::validate() const {
  if (segment_bytes < 4096) throw DomainError("segment_bytes must be at least 4096");
  if (segment_bytes % 8 != 0) throw DomainError("segment_bytes must be a multiple of 8");
  if (max_limit > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw DomainError("max_limit must not exceed 2^63 - 1");
  }
  if (shards == 0) throw DomainError("shards must be positive");
}

std::uint64_t SegmentView::count() const { return simd::count_bits(bits) + (has_two ? 1 : 0); }

Sieve::Sieve(SieveConfig config) : config_(config) { config_.validate(); }

void Sieve::check_range(std::uint64_t lo, std::uint64_t hi) const {
  if (hi < lo) {
    throw EmptyRangeError("empty range: hi (" + std::to_string(hi) + ") < lo (" + std::to_string(lo) + ")");
  }
  if (hi > config_.max_limit) {
    throw CapacityError("range end " + std::to_string(hi) + " exceeds the sieve limit " +
                        std::to_string(config_.max_limit));
  }
}

void Sieve::for_each_segment(std::uint64_t lo, std::uint64_t hi,
                             const std::function<bool(const SegmentView&)>& fn) const {
  check_range(lo, hi);
  const OddSpan span = odd_span(lo, hi);
  const std::uint64_t seg_bits = config_.segment_bytes * 8;
  const auto primes = base_primes(isqrt(hi));
  const Presieve& pre = presieve_for(seg_bits / 64);
  std::vector<std::uint64_t> words(seg_bits / 64);

  bool two_pending = span.has_two;
  if (span.t_begin >= span.t_end) {
    if (two_pending) {
      SegmentView v;
      v.has_two = true;
      fn(v);
    }
    return;
  }
  for (std::uint64_t t = span.t_begin; t < span.t_end; t += seg_bits) {
    const std::uint64_t nbits = std::min(seg_bits, span.t_end - t);
    sieve_window(t, nbits, primes, pre, words);
    SegmentView v;
    v.odd_base = 2 * t + 1;
    v.nbits = nbits;
    v.has_two = two_pending;
    v.bits = std::span<const std::uint64_t>(words.data(), static_cast<std::size_t>((nbits + 63) / 64));
    two_pending = false;
    if (!fn(v)) return;
  }
}

std::uint64_t Sieve::count_range(std::uint64_t lo, std::uint64_t hi) const {
  check_range(lo, hi);
  const OddSpan span = odd_span(lo, hi);
  const std::uint64_t seg_bits = config_.segment_bytes * 8;
  const auto parts = split(span.t_begin, span.t_end, config_.shards, seg_bits);
  const auto primes = base_primes(isqrt(hi));
  const Presieve& pre = presieve_for(seg_bits / 64);
  std::vector<std::uint64_t> counts(parts.size(), 0);
  run_parallel(parts.size(), [&](std::size_t i) {
    std::vector<std::uint64_t> words(seg_bits / 64);
    std::uint64_t c = 0;
    for (std::uint64_t t = parts[i].first; t < parts[i].second; t += seg_bits) {
      const std::uint64_t nbits = std::min(seg_bits, parts[i].second - t);
      sieve_window(t, nbits, primes, pre, words);
      c += simd::count_bits(std::span<const std::uint64_t>(words.data(), (nbits + 63) / 64));
    }
    counts[i] = c;
  });
  std::uint64_t total = span.has_two ? 1 : 0;
  for (auto c : counts) total += c;
  return total;
}

std::vector<std::uint64_t> Sieve::primes_in_range(std::uint64_t lo, std::uint64_t hi) const {
  check_range(lo, hi);
  const OddSpan span = odd_span(lo, hi);
  const std::uint64_t seg_bits = config_.segment_bytes * 8;
  const auto parts = split(span.t_begin, span.t_end, config_.shards, seg_bits);
  const auto primes = base_primes(isqrt(hi));
  const Presieve& pre = presieve_for(seg_bits / 64);
  std::vector<std::vector<std::uint64_t>> found(parts.size());
  run_parallel(parts.size(), [&](std::size_t i) {
    std::vector<std::uint64_t> words(seg_bits / 64);
    for (std::uint64_t t = parts[i].first; t < parts[i].second; t += seg_bits) {
      const std::uint64_t nbits = std::min(seg_bits, parts[i].second - t);
      sieve_window(t, nbits, primes, pre, words);
      SegmentView v{2 * t + 1, nbits, false, {words.data(), static_cast<std::size_t>((nbits + 63) / 64)}};
      v.for_each_prime([&](std::uint64_t p) { found[i].push_back(p); });
    }
  });
  std::vector<std::uint64_t> out;
  if (span.has_two) out.push_back(2);
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

std::uint64_t Sieve::pi(std::uint64_t x) const {
  if (x > config_.max_limit) {
    throw CapacityError("pi(" + std::to_string(x) + ") exceeds the sieve limit " +
                        std::to_string(config_.max_limit));
  }
  return count_range(0, x);
}

std::uint64_t Sieve::nth_prime(std::uint64_t k) const {
  if (k == 0) throw DomainError("prime indices are 1-based");
  // Coarse counting in large chunks, then a segment walk inside the chunk
  // that contains p_k.
  const std::uint64_t chunk = std::uint64_t{1} << 32;
  std::uint64_t lo = 0;
  std::uint64_t seen = 0;
  while (true) {
    if (lo > config_.max_limit) throw CapacityError("p_" + std::to_string(k) + " lies beyond the sieve limit");
    const std::uint64_t hi = std::min(config_.max_limit, lo + chunk - 1);
    const std::uint64_t c = count_range(lo, hi);
    if (seen + c >= k) {
      std::uint64_t answer = 0;
      for_each_segment(lo, hi, [&](const SegmentView& v) {
        const std::uint64_t sc = v.count();
        if (seen + sc < k) {
          seen += sc;
          return true;
        }
        v.for_each_prime([&](std::uint64_t p) {
          if (answer == 0 && ++seen == k) answer = p;
        });
        return false;
      });
      return answer;
    }
    seen += c;
    if (hi == config_.max_limit) {
      throw CapacityError("p_" + std::to_string(k) + " lies beyond the sieve limit " +
                          std::to_string(config_.max_limit));
    }
    lo = hi + 1;
  }
}

PrimeTable Sieve::primes_up_to(std::uint64_t limit) const { return build_table(limit, UINT64_MAX); }

// Primes up to `limit`, stopping once `max_count` are stored.
PrimeTable Sieve::build_table(std::uint64_t limit, std::uint64_t max_count) const {
  check_range(0, limit);
  const OddSpan span = odd_span(0, limit);
  const std::uint64_t seg_bits = config_.segment_bytes * 8;
  const auto primes = base_primes(isqrt(limit));
  const Presieve& pre = presieve_for(seg_bits / 64);
  const long double est = limit < 100 ? 30.0L : 1.26L * limit / std::log(static_cast<long double>(limit));
  PrimeTableBuilder builder(1, std::min(max_count, static_cast<std::uint64_t>(est)));
  if (span.has_two && max_count > 0) builder.push(2);

  // Rounds of `shards` segments sieved concurrently, appended in order.
  const unsigned shards = config_.shards;
  std::vector<std::vector<std::uint64_t>> words(shards, std::vector<std::uint64_t>(seg_bits / 64));
  for (std::uint64_t t = span.t_begin; t < span.t_end && builder.count() < max_count;
       t += seg_bits * shards) {
    std::vector<std::uint64_t> nbits(shards, 0);
    for (unsigned s = 0; s < shards; ++s) {
      const std::uint64_t ts = t + s * seg_bits;
      nbits[s] = ts < span.t_end ? std::min(seg_bits, span.t_end - ts) : 0;
    }
    run_parallel(shards, [&](std::size_t s) {
      if (nbits[s] > 0) sieve_window(t + s * seg_bits, nbits[s], primes, pre, words[s]);
    });
    for (unsigned s = 0; s < shards && nbits[s] > 0; ++s) {
      SegmentView v{2 * (t + s * seg_bits) + 1, nbits[s], false,
                    {words[s].data(), static_cast<std::size_t>((nbits[s] + 63) / 64)}};
      v.for_each_prime([&](std::uint64_t p) {
        if (builder.count() < max_count) builder.push(p);
      });
    }
  }
  if (builder.count() < max_count) return std::move(builder).finish(limit);
  const std::uint64_t last = builder.last();
  return std::move(builder).finish(last);
}

PrimeTable Sieve::first_primes(std::uint64_t count) const {
  if (count == 0) return PrimeTable::from_primes(1, {}, 1);
  const std::uint64_t upper = nth_prime_upper(count);
  const std::uint64_t pk = upper <= config_.max_limit ? 0 : nth_prime(count);  // throws when out of reach
  return build_table(pk != 0 ? pk : upper, count);
}

PiIndex::PiIndex(const Sieve& sieve, std::uint64_t limit) : limit_(limit) {
  const std::uint64_t odd_positions = limit >= 1 ? (limit - 1) / 2 + 1 : 0;
  bits_.assign(static_cast<std::size_t>((odd_positions + 63) / 64), 0);
  if (limit >= 1) {
    sieve.for_each_segment(0, limit, [&](const SegmentView& v) {
      if (v.nbits == 0) return true;
      const std::uint64_t w0 = (v.odd_base - 1) / 2 / 64;
      std::copy(v.bits.begin(), v.bits.end(), bits_.begin() + static_cast<std::ptrdiff_t>(w0));
      return true;
    });
  }
  finish_counts();
}

PiIndex::PiIndex(const PrimeTable& table, std::uint64_t limit) : limit_(limit) {
  if (table.empty() || table.base_index() != 1 || table.limit() < limit) {
    throw CapacityError("pi index needs a table from p_1 sieved through " + std::to_string(limit));
  }
  has_two_ = table.first() == 2;
  const std::uint64_t odd_positions = limit >= 1 ? (limit - 1) / 2 + 1 : 0;
  bits_.assign(static_cast<std::size_t>((odd_positions + 63) / 64), 0);
  std::vector<std::uint64_t> buf(1 << 16);
  bool done = false;
  for (std::uint64_t k = 1; k <= table.last_index() && !done;) {
    const std::uint64_t n = std::min<std::uint64_t>(buf.size(), table.last_index() - k + 1);
    table.decode(k, std::span<std::uint64_t>(buf.data(), n));
    for (std::uint64_t i = 0; i < n && !done; ++i) {
      const std::uint64_t p = buf[i];
      done = p > limit;
      if (!done && p % 2 == 1) bits_[(p - 1) / 2 / 64] |= std::uint64_t{1} << ((p - 1) / 2 % 64);
    }
    k += n;
  }
  finish_counts();
}

void PiIndex::finish_counts() {
  before_.resize(bits_.size());
  std::uint64_t running = 0;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    before_[w] = running;
    running += static_cast<std::uint64_t>(std::popcount(bits_[w]));
  }
}

std::uint64_t PiIndex::pi(std::uint64_t x) const {
  if (x > limit_) {
    throw CapacityError("pi(" + std::to_string(x) + ") exceeds the index limit " + std::to_string(limit_));
  }
  const std::uint64_t two = has_two_ ? 1 : 0;
  if (x < 2) return 0;
  if (x < 3) return two;
  const std::uint64_t odd = (x % 2 == 1) ? x : x - 1;
  const std::uint64_t j = (odd - 1) / 2;
  const std::uint64_t w = j / 64;
  const std::uint64_t b = j % 64;
  const std::uint64_t mask = b == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (b + 1)) - 1);
  return two + before_[w] + static_cast<std::uint64_t>(std::popcount(bits_[w] & mask));
}

bool PiIndex::is_prime(std::uint64_t x) const {
  if (x > limit_) throw CapacityError("is_prime beyond the index limit");
  if (x == 2) return has_two_;
  if (x < 2 || x % 2 == 0) return false;
  const std::uint64_t j = (x - 1) / 2;
  return (bits_[j / 64] >> (j % 64)) & 1;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Witness set proven sufficient for all n < 2^64 (Jim Sinclair).
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace hlc
