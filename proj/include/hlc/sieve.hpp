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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace hlc {

// An immutable block of consecutive primes p_{base}, p_{base+1}, ...
//
// Storage is compact so that 1.7e9 primes fit in memory: one 64-bit anchor
// per block of 32 primes and one byte per prime holding half the gap to its
// predecessor. Prime gaps stay at or below 510 up to 3.04e11, so a byte
// suffices at the scales this toolkit sieves; construction rejects wider gaps
// with a CapacityError. The prime 2 is kept out of
// the gap stream.
class PrimeTable {
 public:
  static constexpr std::size_t kBlock = 32;

  PrimeTable() = default;

  // `primes` must be strictly increasing and consist of consecutive primes
  // starting at p_{base_index}. `limit` is the largest integer known to be
  // fully sieved (>= the last prime).
  static PrimeTable from_primes(std::uint64_t base_index, std::span<const std::uint64_t> primes,
                                std::uint64_t limit);

  std::uint64_t base_index() const noexcept { return base_index_; }
  std::uint64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t last_index() const noexcept { return base_index_ + size_ - 1; }

  bool covers_index(std::uint64_t k) const noexcept {
    return size_ > 0 && k >= base_index_ && k <= last_index();
  }

  // p_k. Throws CapacityError when k is outside the table.
  std::uint64_t nth(std::uint64_t k) const;

  // pi(x) for first() <= x <= limit(), as an absolute count. Requires
  // base_index() == 1 for x below the first stored prime.
  std::uint64_t count_leq(std::uint64_t x) const;

  // Writes p_{first}, ..., p_{first + out.size() - 1} into out.
  void decode(std::uint64_t first, std::span<std::uint64_t> out) const;

  std::vector<std::uint64_t> to_vector() const;

  std::uint64_t first() const { return nth(base_index_); }
  std::uint64_t last() const { return nth(last_index()); }

  std::size_t memory_bytes() const noexcept {
    return anchors_.size() * sizeof(std::uint64_t) + half_gaps_.size();
  }

  friend bool operator==(const PrimeTable& a, const PrimeTable& b) = default;

 private:
  // Local position i (0-based, excluding a stored 2) to value.
  std::uint64_t odd_at(std::uint64_t i) const;

  std::uint64_t base_index_ = 1;
  std::uint64_t size_ = 0;
  std::uint64_t limit_ = 0;
  bool has_two_ = false;
  std::vector<std::uint64_t> anchors_;
  std::vector<std::uint8_t> half_gaps_;

  friend class PrimeTableBuilder;
};

// Incremental construction of a PrimeTable from ascending primes.
class PrimeTableBuilder {
 public:
  explicit PrimeTableBuilder(std::uint64_t base_index, std::uint64_t expected = 0);
  void push(std::uint64_t prime);
  void append(std::span<const std::uint64_t> primes) {
    for (auto p : primes) push(p);
  }
  std::uint64_t count() const noexcept { return table_.size_; }
  std::uint64_t last() const noexcept { return previous_; }
  PrimeTable finish(std::uint64_t limit) &&;

 private:
  PrimeTable table_;
  std::uint64_t previous_ = 0;
};

struct SieveConfig {
  std::size_t segment_bytes = 256 * 1024;
  std::uint64_t max_limit = std::uint64_t{1} << 40;
  unsigned shards = 1;

  // Throws DomainError when an invariant is violated.
  void validate() const;
};

// One sieved window. Bit j of `bits` is set iff odd number `odd_base + 2j`
// is prime, for j < nbits. The prime 2 is reported via has_two.
struct SegmentView {
  std::uint64_t odd_base = 1;
  std::uint64_t nbits = 0;
  bool has_two = false;
  std::span<const std::uint64_t> bits;

  std::uint64_t count() const;
  template <typename F>
  void for_each_prime(F&& fn) const {
    if (has_two) fn(std::uint64_t{2});
    for (std::size_t w = 0; w < bits.size(); ++w) {
      std::uint64_t word = bits[w];
      while (word) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
        fn(odd_base + 2 * (64 * w + b));
        word &= word - 1;
      }
    }
  }
};

// Segmented, bit-packed, odd-only sieve of Eratosthenes with a presieve
// pattern for the primes 3..13.
class Sieve {
 public:
  explicit Sieve(SieveConfig config = {});

  const SieveConfig& config() const noexcept { return config_; }

  // Primes p with lo <= p <= hi, ascending.
  std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) const;

  // Number of primes in [lo, hi].
  std::uint64_t count_range(std::uint64_t lo, std::uint64_t hi) const;

  // pi(x), streamed without storing primes.
  std::uint64_t pi(std::uint64_t x) const;

  // p_k, streamed; bounded memory.
  std::uint64_t nth_prime(std::uint64_t k) const;

  // The first `count` primes (p_1 .. p_count).
  PrimeTable first_primes(std::uint64_t count) const;

  // All primes up to `limit`.
  PrimeTable primes_up_to(std::uint64_t limit) const;

  // Visits the segments covering [lo, hi] in ascending order on the calling
  // thread. Returning false from fn stops the walk.
  void for_each_segment(std::uint64_t lo, std::uint64_t hi,
                        const std::function<bool(const SegmentView&)>& fn) const;

 private:
  void check_range(std::uint64_t lo, std::uint64_t hi) const;
  PrimeTable build_table(std::uint64_t limit, std::uint64_t max_count) const;

  SieveConfig config_;
};

// Constant-time pi(x) for every x <= limit: the odd-only bit image of
// [0, limit] plus a running count per 64-bit word.
class PiIndex {
 public:
  PiIndex() = default;
  PiIndex(const Sieve& sieve, std::uint64_t limit);
  // Counts only the table's entries; the table must start at p_1 and be
  // sieved through `limit`.
  PiIndex(const PrimeTable& table, std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t pi(std::uint64_t x) const;
  bool is_prime(std::uint64_t x) const;

 private:
  void finish_counts();

  std::uint64_t limit_ = 0;
  bool has_two_ = true;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> before_;  // primes among odd numbers before word w (excluding 2)
};

// Deterministic Miller-Rabin, exact on the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// On-disk prime list: header {"HLCP", u32 version, u64 base_index, u64 count}
// followed by `count` little-endian u64 primes.
inline constexpr std::uint32_t kCacheVersion = 1;
void write_prime_cache(const std::filesystem::path& path, const PrimeTable& table);
PrimeTable read_prime_cache(const std::filesystem::path& path);

// Returns the first `count` primes, loading from or saving to the directory
// named by HLC_SIEVE_CACHE when it is set.
PrimeTable cached_first_primes(const Sieve& sieve, std::uint64_t count);

}  // namespace hlc
