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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hlc/numeric.hpp"
#include "hlc/sieve.hpp"

namespace hlc::bounds {

// kBoth is used by two-sided bands (|pi(x) - li(x)| <= band).
enum class Direction { kLower, kUpper, kBoth };
enum class Condition { kNone, kRiemannHypothesis };

std::string_view direction_name(Direction d);

// x / (log x - 1 - sum_j a_j / log^j x - eps / log^k x), k = a.size().
struct RationalLog {
  std::vector<Real> a;
  Real eps = 0;
};

// li(x) + sqrt_coeff * sqrt(x) / log x.
struct LiBand {
  Real sqrt_coeff = 0;
};

// li(x) -/+ sqrt(x) / (8 pi) * log(x / log x).
struct RhBand {};

using Form = std::variant<RationalLog, LiBand, RhBand>;

// A named explicit estimate of pi(x). Construct through make(), which checks
// the invariants.
struct BoundSpec {
  std::string id;
  Direction direction = Direction::kLower;
  Form form;
  Real valid_from = 2;
  std::optional<Real> valid_to;
  Condition conditional = Condition::kNone;
  std::string provenance;
  // False when the validity range starts beyond what a desk sieve reaches;
  // such specs are only consistency-checked at valid_from.
  bool desk_auditable = true;

  static BoundSpec make(std::string id, Direction direction, Form form, Real valid_from,
                        std::optional<Real> valid_to, Condition conditional, std::string provenance);
};

// t / (log t - 1 - c / log t).
Real f_c(Real t, Real c);

// Denominator of a rational-log form at x.
Real rational_log_denominator(const RationalLog& form, Real x);

// Value of a RATIONAL_LOG spec at x >= valid_from.
Real pana_bound(Real x, const BoundSpec& spec);

// li(x) - 2 sqrt(x) / log x for x >= 1 090 877.
Real li_lower_band(Real x);

// sqrt(x) / (8 pi) * log(x / log x) for x >= 5639.
Real rh_band(Real x);

// Value of any spec on the requested side (kLower or kUpper). For one-sided
// specs the side must match their direction.
Real evaluate(const BoundSpec& spec, Real x, Direction side);

// Smallest integer g >= 2 with log 2 >= eps / log^k x + sum_j a_j / log^j x
// for every x >= g.
std::uint64_t gamma_k(const std::vector<Real>& a, Real eps, std::uint64_t search_cap = std::uint64_t{1} << 62);

// Named constants used by the registry.
inline constexpr Real kF115From = 38284442297.0L;
inline constexpr Real kPanaAlpha2 = 38099531.0L;
inline constexpr Real kPanaBeta2 = 14000264036190262.0L;
inline constexpr Real kPanaEps2 = 0.70863503301170907614119L;
inline constexpr Real kDusartFrom = 5393.0L;
inline constexpr Real kF1From = 468049.0L;
inline constexpr Real kLiBandFrom = 1090877.0L;
inline constexpr Real kRhBandFrom = 5639.0L;
inline constexpr Real kLiValidTo = 1e20L;

// The built-in registry. `three_term_from` sets the validity threshold of
// axler_3term_upper, whose source gives none here; it defaults to B.
std::vector<BoundSpec> registry(Real three_term_from = kF115From);
const BoundSpec& find(const std::vector<BoundSpec>& specs, std::string_view id);

struct AuditPoint {
  std::uint64_t x = 0;
  std::uint64_t pi_x = 0;
  Real bound_x = 0;
  Direction side = Direction::kLower;
  bool violated = false;
  friend bool operator==(const AuditPoint&, const AuditPoint&) = default;
};

struct AuditResult {
  std::string spec_id;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t points_checked = 0;
  std::vector<AuditPoint> violations;
  friend bool operator==(const AuditResult&, const AuditResult&) = default;
};

struct AuditOptions {
  unsigned shards = 1;
  // Called for every checked point in ascending x. Forces a single shard.
  std::function<void(const AuditPoint&)> sink;
};

// Checks spec against exact prime counts on [lo, hi]. Lower sides are tested
// at hi and at p - 1 for every prime p in (lo, hi]; upper sides at lo and at
// every prime in (lo, hi]. Those are the extremal integers of each prime gap,
// so a clean audit covers every integer in the range.
AuditResult audit(const BoundSpec& spec, std::uint64_t lo, std::uint64_t hi, const Sieve& sieve,
                  const AuditOptions& options = {});

// The same audit against a stored table (base index 1, limit >= hi).
AuditResult audit(const BoundSpec& spec, std::uint64_t lo, std::uint64_t hi, const PrimeTable& table);

// "spec_id,x,pi_x,bound_x,direction,violated"
std::string csv_header();
std::string csv_row(const std::string& spec_id, const AuditPoint& point);

}  // namespace hlc::bounds
