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

#include <bit>

#include "hlc/simd/kernels.hpp"

namespace hlc::simd::scalar {

std::uint64_t count_bits(std::span<const std::uint64_t> words) {
  std::uint64_t total = 0;
  for (std::uint64_t w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::size_t segal_first_violation(std::uint64_t bound, std::span<const std::uint64_t> lhs_desc,
                                  std::span<const std::uint64_t> rhs, std::size_t from) {
  const std::size_t n = rhs.size();
  for (std::size_t i = from; i < n; ++i) {
    if (lhs_desc[n - 1 - i] + rhs[i] > bound) return i;
  }
  return n;
}

}  // namespace hlc::simd::scalar
