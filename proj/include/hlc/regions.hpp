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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlc/numeric.hpp"

namespace hlc::regions {

// Constants of the coverage theorems.
inline constexpr Real kC0 = 0.70881678090424862707121L;
inline constexpr Real kC1 = 2 * (1 - kLog2);
inline constexpr Real kC2 = 1 / (4 * kPi);
inline constexpr Real kUdrescuConstant = 0.3426L;
inline constexpr std::uint64_t kSegalVerifiedBound = 39'708'229'123ULL;  // p_{1.7e9}
inline constexpr Real kLiRangeCap = 1e20L;
inline constexpr Real kBandRatio = 1950;
// Relative margin a real-valued hypothesis must clear to count as satisfied.
inline constexpr Real kHypothesisMargin = 1e-9L;

// Parameters of the band x/r <= y <= x/s with upper bound f_b valid from B.
struct RegionParams {
  Real b = 1.15L;
  Real B = 38284442297.0L;
  Real r = 1;
  Real s = 1;

  void validate() const;
};

Real lambda_b(const RegionParams& p);
Real eta_b(const RegionParams& p);

struct ChiPhi {
  Real chi = 0;
  Real phi = 0;  // max(chi, 0)
};
ChiPhi chi_phi(const RegionParams& p);

// The three candidates of the threshold and the resulting integer x0.
struct X0Terms {
  Real exp_term = 0;     // exp(lambda + sqrt(phi))
  Real sieve_term = 0;   // 468049 r
  Real b_term = 0;       // B / (1 + 1/r)
  std::uint64_t x0 = 0;  // ceil(max(...))
};
X0Terms x0_terms(const RegionParams& p);
std::uint64_t x0_threshold(const RegionParams& p);

struct ChainRow {
  Real r = 0;
  Real s = 0;
};

// True iff the rows chain (s_i == r_{i+1} within 1e-9), the first r equals
// outer_ratio (when given), the last s is at most s_min, and every row's x0
// is at most cap. A broken link throws ChainError naming the gap.
bool verify_chain(std::span<const ChainRow> rows, Real b, Real B, Real s_min, std::uint64_t cap,
                  std::optional<Real> outer_ratio = kBandRatio);

// The fifteen (r, s) rows that carry the band m/1950 <= n <= m/109, with the
// reference x0 value of each row.
struct ReferenceRow {
  ChainRow row;
  std::uint64_t reference_x0 = 0;
};
std::vector<ReferenceRow> reference_chain();
inline constexpr Real kReferenceB = 38284442297.0L;
inline constexpr Real kReferenceb = 1.15L;
inline constexpr std::uint64_t kReferenceCap = 38'284'440'640ULL;

// "r,s,exp_term,sieve_term,B_term,x0"
std::string x0_csv_header();
std::string x0_csv_row(const RegionParams& p, const X0Terms& t);

// exp(sqrt(0.3426 / log(1 + eps))), eps in (0, 1].
Real udrescu_threshold(Real eps);

// max{alpha, beta, gamma, exp((c^2 / (2 (c - eps)))^(1/k))}, c > eps > 0.
Real multi_term_threshold(int k, Real c, Real eps, Real alpha, Real beta, Real gamma);

// Lower end of the n-range in the li-based theorem, and its closed form.
Real li_pair_threshold(Real m);
Real li_pair_threshold_closed_form(Real m);

enum class Source { kBandRatio1950, kRatioWitness, kLogSquare, kLiRange, kRiemann, kScanned, kDirect };
std::string_view source_name(Source s);

struct Guarantee {
  Source source = Source::kDirect;
  bool rh_conditional = false;
  std::optional<Wide> cap;     // upper limit on m + n, if the source has one
  bool satisfied = false;
  bool boundary_uncertain = false;  // hypothesis within the margin of its threshold
  Real epsilon = 0;                 // witness ratio n/m, for kRatioWitness
  Real required = 0;                // threshold the hypothesis compares against
};

struct CoverageVerdict {
  Wide m = 0;
  Wide n = 0;
  std::vector<Guarantee> guarantees;
  bool covered_unconditionally = false;
  bool covered_under_rh = false;
};

// Exact prime counting used for the DIRECT guarantee.
struct DirectCheck {
  std::function<std::uint64_t(std::uint64_t)> pi;
  std::uint64_t budget = 0;  // DIRECT is evaluated when m + n <= budget
};

// Evaluates every theorem's hypotheses for m >= n >= 2.
CoverageVerdict coverage_verdict(Wide m, Wide n, const DirectCheck& direct = {});

std::string to_json(const CoverageVerdict& v);

}  // namespace hlc::regions
