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

#include "hlc/numeric.hpp"

// Logarithmic integral li(x) = Ei(log x), principal value, in extended
// precision.
namespace hlc {

// Switchover point (in u = log x) between the convergent power series and
// the asymptotic expansion of Ei(u).
inline constexpr Real kLiSeriesMaxLog = 40.0L;

// li(x) for x > 1. Throws DomainError for x <= 1.
Real li(Real x);

namespace logint {

// Ei(u) = gamma + log u + sum_{k>=1} u^k / (k k!), u > 0. All terms are
// positive, so there is no cancellation.
Real ei_series(Real u);

// Ei(u) ~ e^u / u * sum_{k>=0} k! / u^k, truncated at the smallest term.
// Accurate to full precision for u >= 40 and degrades below that.
Real ei_asymptotic(Real u);

// Ramanujan's series
//   li(x) = gamma + log log x
//         + sqrt(x) sum_{n>=1} (-1)^{n-1} (log x)^n / (n! 2^{n-1})
//                            * sum_{j=0}^{floor((n-1)/2)} 1/(2j+1)
// An independent evaluation used to cross-check ei_series.
Real li_ramanujan(Real x);

}  // namespace logint
}  // namespace hlc
