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

#include "hlc/logint.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hlc/error.hpp"

namespace hlc {
namespace logint {

namespace {
constexpr Real kEps = std::numeric_limits<Real>::epsilon();
}

Real ei_series(Real u) {
  if (!(u > 0)) throw DomainError("ei_series needs u > 0");
  Real term = 1;  // u^k / k!
  Real sum = 0;
  for (int k = 1; k < 2000; ++k) {
    term *= u / k;
    const Real add = term / k;
    sum += add;
    if (add < kEps * sum * 0.25L) break;
  }
  return kEulerGamma + std::log(u) + sum;
}

Real ei_asymptotic(Real u) {
  if (!(u > 0)) throw DomainError("ei_asymptotic needs u > 0");
  Real term = 1;  // k! / u^k
  Real sum = 1;
  for (int k = 1; k < 1000; ++k) {
    const Real next = term * k / u;
    if (next >= term) break;  // past the smallest term
    term = next;
    sum += term;
    if (term < kEps * sum * 0.25L) break;
  }
  return std::exp(u) / u * sum;
}

Real li_ramanujan(Real x) {
  if (!(x > 1)) throw DomainError("li needs x > 1");
  const Real u = std::log(x);
  Real power = 1;  // (log x)^n / (n! 2^{n-1})
  Real inner = 0;  // sum_{j <= (n-1)/2} 1/(2j+1)
  Real sum = 0;
  for (int n = 1; n < 4000; ++n) {
    power *= u / n;
    if (n > 1) power /= 2;
    if ((n - 1) % 2 == 0) inner += 1.0L / static_cast<Real>(n);  // 2j+1 = n for j = (n-1)/2
    const Real term = power * inner;
    sum += (n % 2 == 1) ? term : -term;
    if (n > u && term < kEps * std::fabs(sum) * 0.01L) break;
  }
  return kEulerGamma + std::log(u) + std::sqrt(x) * sum;
}

}  // namespace logint

Real li(Real x) {
  if (!(x > 1)) throw DomainError("li(x) is defined here for x > 1 (got " + std::to_string(static_cast<double>(x)) + ")");
  const Real u = std::log(x);
  return u < kLiSeriesMaxLog ? logint::ei_series(u) : logint::ei_asymptotic(u);
}

}  // namespace hlc
