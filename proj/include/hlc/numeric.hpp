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
#include <string_view>

namespace hlc {

// Extended precision for every bound and threshold formula. On x86-64 this is
// the 80-bit x87 format with a 64-bit mantissa.
using Real = long double;

// Pair arguments of the coverage verdict reach 10^30 and beyond, so they are
// carried as 128-bit unsigned integers.
using Wide = unsigned __int128;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kEulerGamma = 0.577215664901532860606512090082402431L;
inline constexpr Real kLog2 = 0.693147180559945309417232121458176568L;

// Parses a non-negative decimal integer. Underscores are accepted as digit
// separators ("39_708_229_123"); a leading "1e9"-style exponent form is also
// accepted when the result is integral.
std::uint64_t parse_u64(std::string_view text);
Wide parse_wide(std::string_view text);
Real parse_real(std::string_view text);

std::string to_string(Wide value);

// Exact integer square root, floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n);

// Smallest integer >= value, saturating to UINT64_MAX - the caller decides
// whether saturation is an error.
std::uint64_t ceil_to_u64(Real value, bool* overflow = nullptr);

// Real and Wide conversions for the verdict code.
inline Real to_real(Wide v) { return static_cast<Real>(v); }

}  // namespace hlc
