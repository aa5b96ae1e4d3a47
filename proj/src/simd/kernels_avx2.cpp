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

#include "hlc/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define HLC_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define HLC_HAVE_AVX2_TU 0
#endif

namespace hlc::simd::avx2 {

#if HLC_HAVE_AVX2_TU

namespace {

// Nibble-lookup popcount (Mula); sums bytes with vpsadbw into four 64-bit
// lanes.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
}

}  // namespace

std::uint64_t count_bits(std::span<const std::uint64_t> words) {
  const std::size_t n = words.size();
  const std::uint64_t* p = words.data();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  // Byte counters saturate after 31 iterations of 8-bit adds (31 * 8 = 248).
  while (i + 4 <= n) {
    __m256i bytes = _mm256_setzero_si256();
    std::size_t stop = i + 4 * 31;
    if (stop > n) stop = n - (n - i) % 4;
    for (; i < stop; i += 4) {
      __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
      bytes = _mm256_add_epi8(bytes, popcount_bytes(v));
    }
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(bytes, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(p[i]));
  return total;
}

std::size_t segal_first_violation(std::uint64_t bound, std::span<const std::uint64_t> lhs_desc,
                                  std::span<const std::uint64_t> rhs, std::size_t from) {
  const std::size_t n = rhs.size();
  const std::uint64_t* lhs = lhs_desc.data();
  const std::uint64_t* r = rhs.data();
  // Primes stay below 2^62, so signed 64-bit compares are exact.
  const __m256i vb = _mm256_set1_epi64x(static_cast<long long>(bound));
  std::size_t i = from;
  for (; i + 4 <= n; i += 4) {
    // lhs_desc[n-1-i-3 .. n-1-i], reversed to line up with rhs[i .. i+3].
    __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lhs + (n - 4 - i)));
    l = _mm256_permute4x64_epi64(l, 0x1B);
    __m256i rv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r + i));
    __m256i gt = _mm256_cmpgt_epi64(_mm256_add_epi64(l, rv), vb);
    int mask = _mm256_movemask_pd(_mm256_castsi256_pd(gt));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
    if (lhs[n - 1 - i] + r[i] > bound) return i;
  }
  return n;
}

#else

std::uint64_t count_bits(std::span<const std::uint64_t> words) { return scalar::count_bits(words); }

std::size_t segal_first_violation(std::uint64_t bound, std::span<const std::uint64_t> lhs_desc,
                                  std::span<const std::uint64_t> rhs, std::size_t from) {
  return scalar::segal_first_violation(bound, lhs_desc, rhs, from);
}

#endif

}  // namespace hlc::simd::avx2
