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
#include <string>

#include "hlc/error.hpp"
#include "hlc/sieve.hpp"

namespace hlc {

PrimeTableBuilder::PrimeTableBuilder(std::uint64_t base_index, std::uint64_t expected) {
  if (base_index == 0) throw DomainError("prime indices are 1-based");
  table_.base_index_ = base_index;
  if (expected > 0) {
    table_.half_gaps_.reserve(expected);
    table_.anchors_.reserve(expected / PrimeTable::kBlock + 1);
  }
}

void PrimeTableBuilder::push(std::uint64_t prime) {
  if (table_.size_ > 0 && prime <= previous_) {
    throw DomainError("primes must be strictly increasing");
  }
  if (prime == 2) {
    if (table_.size_ != 0 || table_.base_index_ != 1) throw DomainError("2 must be p_1");
    table_.has_two_ = true;
    table_.size_ = 1;
    previous_ = 2;
    return;
  }
  const std::uint64_t local = table_.half_gaps_.size();
  if (local % PrimeTable::kBlock == 0) {
    table_.anchors_.push_back(prime);
    table_.half_gaps_.push_back(0);
  } else {
    std::uint64_t gap = prime - previous_;
    if (gap % 2 != 0 || gap / 2 > 255) {
      throw CapacityError("prime gap " + std::to_string(gap) + " after " + std::to_string(previous_) +
                          " does not fit the compact table encoding");
    }
    table_.half_gaps_.push_back(static_cast<std::uint8_t>(gap / 2));
  }
  ++table_.size_;
  previous_ = prime;
}

PrimeTable PrimeTableBuilder::finish(std::uint64_t limit) && {
  if (table_.size_ > 0 && limit < previous_) throw DomainError("limit below last prime");
  table_.limit_ = limit;
  table_.half_gaps_.shrink_to_fit();
  table_.anchors_.shrink_to_fit();
  return std::move(table_);
}

PrimeTable PrimeTable::from_primes(std::uint64_t base_index, std::span<const std::uint64_t> primes,
                                   std::uint64_t limit) {
  PrimeTableBuilder builder(base_index, primes.size());
  builder.append(primes);
  return std::move(builder).finish(limit);
}

std::uint64_t PrimeTable::odd_at(std::uint64_t i) const {
  const std::uint64_t block = i / kBlock;
  std::uint64_t value = anchors_[block];
  const std::uint8_t* g = half_gaps_.data() + block * kBlock;
  std::uint64_t sum = 0;
  for (std::uint64_t j = 1; j <= i % kBlock; ++j) sum += g[j];
  return value + 2 * sum;
}

std::uint64_t PrimeTable::nth(std::uint64_t k) const {
  if (!covers_index(k)) {
    throw CapacityError("p_" + std::to_string(k) + " is outside the prime table (indices " +
                        std::to_string(base_index_) + ".." +
                        std::to_string(size_ == 0 ? 0 : last_index()) + ")");
  }
  std::uint64_t local = k - base_index_;
  if (has_two_) {
    if (local == 0) return 2;
    --local;
  }
  return odd_at(local);
}

void PrimeTable::decode(std::uint64_t first, std::span<std::uint64_t> out) const {
  if (out.empty()) return;
  if (!covers_index(first) || !covers_index(first + out.size() - 1)) {
    throw CapacityError("decode range outside the prime table");
  }
  std::uint64_t local = first - base_index_;
  std::size_t o = 0;
  if (has_two_) {
    if (local == 0) {
      out[o++] = 2;
    } else {
      --local;
    }
  }
  if (o == out.size()) return;
  std::uint64_t value = odd_at(local);
  out[o++] = value;
  for (std::uint64_t i = local + 1; o < out.size(); ++i, ++o) {
    value = (i % kBlock == 0) ? anchors_[i / kBlock] : value + 2 * std::uint64_t{half_gaps_[i]};
    out[o] = value;
  }
}

std::vector<std::uint64_t> PrimeTable::to_vector() const {
  std::vector<std::uint64_t> out(size_);
  decode(base_index_, out);
  return out;
}

std::uint64_t PrimeTable::count_leq(std::uint64_t x) const {
  if (x > limit_) {
    throw CapacityError("pi(" + std::to_string(x) + ") exceeds the table limit " + std::to_string(limit_));
  }
  if (size_ == 0) return base_index_ - 1;
  std::uint64_t below = base_index_ - 1;
  if (x < first()) {
    if (base_index_ != 1) throw CapacityError("pi(x) below the first stored prime");
    return 0;
  }
  if (has_two_) {
    below += 1;
    if (x < 3 || anchors_.empty()) return below;
  }
  // Last block whose anchor is <= x, then walk the gaps.
  auto it = std::upper_bound(anchors_.begin(), anchors_.end(), x);
  if (it == anchors_.begin()) return below;
  const std::uint64_t block = static_cast<std::uint64_t>(it - anchors_.begin()) - 1;
  const std::uint64_t odd_count = half_gaps_.size();
  std::uint64_t i = block * kBlock;
  std::uint64_t value = anchors_[block];
  while (i + 1 < odd_count && (i + 1) % kBlock != 0) {
    std::uint64_t next = value + 2 * std::uint64_t{half_gaps_[i + 1]};
    if (next > x) break;
    value = next;
    ++i;
  }
  return below + i + 1;
}

}  // namespace hlc
