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

#include <bit>
#include <random>
#include <vector>

#include "hlc/simd/kernels.hpp"

namespace hlc::simd {
namespace {

std::size_t naive_violation(std::uint64_t bound, const std::vector<std::uint64_t>& lhs,
                            const std::vector<std::uint64_t>& rhs, std::size_t from) {
  const std::size_t n = rhs.size();
  for (std::size_t i = from; i < n; ++i) {
    if (lhs[n - 1 - i] + rhs[i] > bound) return i;
  }
  return n;
}

TEST(Simd, DispatchReportsAnIsa) {
  const Isa isa = active_isa();
  EXPECT_TRUE(isa_supported(isa));
  EXPECT_TRUE(isa_supported(Isa::kScalar));
  EXPECT_FALSE(isa_name(isa).empty());
}

TEST(Simd, SetActiveIsaFallsBack) {
  const Isa before = active_isa();
  EXPECT_EQ(set_active_isa(Isa::kScalar), Isa::kScalar);
  EXPECT_EQ(active_isa(), Isa::kScalar);
  const Isa got = set_active_isa(Isa::kAvx2);
  EXPECT_EQ(got, isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar);
  set_active_isa(before);
}

TEST(Simd, CountBitsMatchesPopcount) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {0, 1, 3, 4, 5, 31, 32, 33, 124, 125, 128, 1000, 4096, 4099}) {
    std::vector<std::uint64_t> words(n);
    for (auto& w : words) w = rng();
    std::uint64_t want = 0;
    for (auto w : words) want += std::popcount(w);
    EXPECT_EQ(scalar::count_bits(words), want) << n;
    if (isa_supported(Isa::kAvx2)) EXPECT_EQ(avx2::count_bits(words), want) << n;
    EXPECT_EQ(count_bits(words), want);
  }
}

TEST(Simd, CountBitsAllOnesLongRun) {
  // Long runs of dense words exercise the byte-counter flush.
  std::vector<std::uint64_t> words(10000, ~std::uint64_t{0});
  EXPECT_EQ(scalar::count_bits(words), 640000u);
  if (isa_supported(Isa::kAvx2)) EXPECT_EQ(avx2::count_bits(words), 640000u);
}

TEST(Simd, SegalKernelEquivalence) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = rng() % 70;
    std::vector<std::uint64_t> lhs(n), rhs(n);
    for (auto& v : lhs) v = rng() % 1000;
    for (auto& v : rhs) v = rng() % 1000;
    const std::uint64_t bound = 900 + rng() % 1200;
    const std::size_t from = n == 0 ? 0 : rng() % (n + 1);
    const std::size_t want = naive_violation(bound, lhs, rhs, from);
    EXPECT_EQ(scalar::segal_first_violation(bound, lhs, rhs, from), want);
    if (isa_supported(Isa::kAvx2)) EXPECT_EQ(avx2::segal_first_violation(bound, lhs, rhs, from), want);
  }
}

TEST(Simd, SegalKernelLargeValues) {
  // Sums beyond 32 bits, as in the extended scan.
  const std::uint64_t big = std::uint64_t{1} << 40;
  std::vector<std::uint64_t> lhs(37, big), rhs(37, big);
  rhs[29] = big + 5;
  const std::uint64_t bound = 2 * big + 1;
  EXPECT_EQ(scalar::segal_first_violation(bound, lhs, rhs, 0), 29u);
  if (isa_supported(Isa::kAvx2)) EXPECT_EQ(avx2::segal_first_violation(bound, lhs, rhs, 0), 29u);
  EXPECT_EQ(segal_first_violation(bound, lhs, rhs, 30), 37u);
}

}  // namespace
}  // namespace hlc::simd
