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

#include "hlc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hlc/error.hpp"

namespace hlc {
namespace {

std::string strip_separators(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '_') out.push_back(c);
  }
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Accepts "<digits>[.<digits>]e<digits>" and expands it to an exact integer
// when the mantissa's fractional digits are absorbed by the exponent.
bool expand_exponent(const std::string& s, Wide& out) {
  auto e = s.find_first_of("eE");
  if (e == std::string::npos) return false;
  std::string mant = s.substr(0, e);
  std::string expo = s.substr(e + 1);
  if (!all_digits(expo) || expo.size() > 3) return false;
  int exponent = std::stoi(expo);
  std::string digits;
  int frac = 0;
  auto dot = mant.find('.');
  if (dot == std::string::npos) {
    digits = mant;
  } else {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    frac = static_cast<int>(mant.size() - dot - 1);
  }
  if (!all_digits(digits) || frac > exponent) return false;
  digits.append(static_cast<std::size_t>(exponent - frac), '0');
  Wide v = 0;
  const Wide limit = ~Wide(0);
  for (char c : digits) {
    Wide d = static_cast<Wide>(c - '0');
    if (v > (limit - d) / 10) throw DomainError("integer out of range: " + s);
    v = v * 10 + d;
  }
  out = v;
  return true;
}

}  // namespace

Wide parse_wide(std::string_view text) {
  std::string s = strip_separators(text);
  Wide v = 0;
  if (expand_exponent(s, v)) return v;
  if (!all_digits(s)) throw DomainError("not a non-negative integer: '" + std::string(text) + "'");
  const Wide limit = ~Wide(0);
  for (char c : s) {
    Wide d = static_cast<Wide>(c - '0');
    if (v > (limit - d) / 10) throw DomainError("integer out of range: " + std::string(text));
    v = v * 10 + d;
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text) {
  Wide v = parse_wide(text);
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw DomainError("integer exceeds 64 bits: " + std::string(text));
  }
  return static_cast<std::uint64_t>(v);
}

Real parse_real(std::string_view text) {
  std::string s = strip_separators(text);
  if (s.empty()) throw DomainError("empty number");
  std::size_t used = 0;
  Real v = 0;
  try {
    v = std::stold(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + std::string(text) + "'");
  }
  if (used != s.size()) throw DomainError("not a number: '" + std::string(text) + "'");
  return v;
}

std::string to_string(Wide value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<Wide>(r) * r > n) --r;
  while (static_cast<Wide>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t ceil_to_u64(Real value, bool* overflow) {
  if (overflow) *overflow = false;
  if (!(value > 0)) return 0;
  Real c = std::ceil(value);
  if (c >= 18446744073709551616.0L) {
    if (overflow) *overflow = true;
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace hlc
