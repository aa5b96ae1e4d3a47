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
#include <span>
#include <string_view>

// Data-parallel inner loops. Every kernel has a portable scalar reference in
// namespace scalar and, on x86-64, an AVX2 variant in namespace avx2. The
// unqualified entry points dispatch to the best variant the running CPU
// supports; tests compare the variants directly.
namespace hlc::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// What the CPU supports.
Isa detect_isa();

// What the dispatcher currently uses. Defaults to detect_isa(); the
// HLC_SIMD=scalar environment variable forces the reference path.
Isa active_isa();

// Overrides the dispatcher; requesting an unsupported ISA falls back to
// scalar. Returns the ISA actually selected.
Isa set_active_isa(Isa isa);

bool isa_supported(Isa isa);

// Number of set bits across the words.
std::uint64_t count_bits(std::span<const std::uint64_t> words);

// Segal block check. For i in [0, n), with lhs taken in reverse order:
//     violation at i  <=>  lhs[n-1-i] + rhs[i] > bound
// Returns the smallest violating i at or after `from`, or n when none.
// Callers pass bound = p_k + 1, lhs = p_{k-q2} .. p_{k-q1} (ascending index),
// rhs = p_{q1+1} .. p_{q2+1}; then i = q - q1.
std::size_t segal_first_violation(std::uint64_t bound, std::span<const std::uint64_t> lhs_desc,
                                  std::span<const std::uint64_t> rhs, std::size_t from = 0);

namespace scalar {
std::uint64_t count_bits(std::span<const std::uint64_t> words);
std::size_t segal_first_violation(std::uint64_t bound, std::span<const std::uint64_t> lhs_desc,
                                  std::span<const std::uint64_t> rhs, std::size_t from);
}  // namespace scalar

namespace avx2 {
std::uint64_t count_bits(std::span<const std::uint64_t> words);
std::size_t segal_first_violation(std::uint64_t bound, std::span<const std::uint64_t> lhs_desc,
                                  std::span<const std::uint64_t> rhs, std::size_t from);
}  // namespace avx2

}  // namespace hlc::simd
