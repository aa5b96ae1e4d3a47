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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hlc/simd/kernels.hpp"

namespace hlc::simd {
namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("HLC_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::kScalar;
  }
  return detect_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

Isa detect_isa() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

bool isa_supported(Isa isa) { return isa == Isa::kScalar || detect_isa() == Isa::kAvx2; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
  Isa chosen = isa_supported(isa) ? isa : Isa::kScalar;
  active().store(chosen, std::memory_order_relaxed);
  return chosen;
}

std::uint64_t count_bits(std::span<const std::uint64_t> words) {
  return active_isa() == Isa::kAvx2 ? avx2::count_bits(words) : scalar::count_bits(words);
}

std::size_t segal_first_violation(std::uint64_t bound, std::span<const std::uint64_t> lhs_desc,
                                  std::span<const std::uint64_t> rhs, std::size_t from) {
  return active_isa() == Isa::kAvx2 ? avx2::segal_first_violation(bound, lhs_desc, rhs, from)
                                    : scalar::segal_first_violation(bound, lhs_desc, rhs, from);
}

}  // namespace hlc::simd
