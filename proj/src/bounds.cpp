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

#include "hlc/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "hlc/error.hpp"
#include "hlc/logint.hpp"

namespace hlc::bounds {
namespace {

std::string fmt(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.21Lg", v);
  return buf;
}

bool nonnegative(const RationalLog& f) {
  for (Real a : f.a) {
    if (a < 0) return false;
  }
  return f.eps >= 0;
}

}  // namespace

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::kLower:
      return "lower";
    case Direction::kUpper:
      return "upper";
    case Direction::kBoth:
      return "both";
  }
  return "?";
}

BoundSpec BoundSpec::make(std::string id, Direction direction, Form form, Real valid_from,
                          std::optional<Real> valid_to, Condition conditional, std::string provenance) {
  if (!(valid_from >= 2)) throw DomainError(id + ": valid_from must be at least 2");
  if (valid_to && *valid_to < valid_from) throw DomainError(id + ": valid_to below valid_from");
  if (const auto* rl = std::get_if<RationalLog>(&form)) {
    if (direction == Direction::kBoth) throw DomainError(id + ": rational-log bounds are one-sided");
    // With non-negative coefficients the denominator increases with x, so
    // positivity at valid_from covers the whole range.
    if (!nonnegative(*rl)) throw DomainError(id + ": coefficients must be non-negative");
    if (!(rational_log_denominator(*rl, valid_from) > 0)) {
      throw SingularityError(id + ": denominator is not positive at valid_from = " + fmt(valid_from));
    }
  }
  if (std::holds_alternative<RhBand>(form) && direction != Direction::kBoth) {
    throw DomainError(id + ": the RH band is two-sided");
  }
  BoundSpec s;
  s.id = std::move(id);
  s.direction = direction;
  s.form = std::move(form);
  s.valid_from = valid_from;
  s.valid_to = valid_to;
  s.conditional = conditional;
  s.provenance = std::move(provenance);
  return s;
}

Real rational_log_denominator(const RationalLog& form, Real x) {
  const Real L = std::log(x);
  Real d = L - 1;
  Real pw = 1;
  for (Real a : form.a) {
    pw *= L;
    d -= a / pw;
  }
  d -= form.eps / pw;  // pw = log^k x
  return d;
}

Real f_c(Real t, Real c) {
  if (!(t > 1)) throw DomainError("f_c needs t > 1");
  const Real L = std::log(t);
  const Real d = L - 1 - c / L;
  if (!(d > 0)) throw SingularityError("f_c: log t - 1 - c/log t = " + fmt(d) + " is not positive");
  return t / d;
}

Real pana_bound(Real x, const BoundSpec& spec) {
  const auto* rl = std::get_if<RationalLog>(&spec.form);
  if (rl == nullptr) throw DomainError(spec.id + " is not a rational-log bound");
  if (x < spec.valid_from) {
    throw ValidityError(spec.id + " is valid from " + fmt(spec.valid_from) + ", not at x = " + fmt(x));
  }
  const Real d = rational_log_denominator(*rl, x);
  if (!(d > 0)) throw SingularityError(spec.id + ": denominator " + fmt(d) + " at x = " + fmt(x));
  return x / d;
}

Real li_lower_band(Real x) {
  if (x < kLiBandFrom) throw ValidityError("li_lower_band is valid from 1090877");
  return li(x) - 2 * std::sqrt(x) / std::log(x);
}

Real rh_band(Real x) {
  if (x < kRhBandFrom) throw ValidityError("rh_band is valid from 5639");
  return std::sqrt(x) / (8 * kPi) * std::log(x / std::log(x));
}

Real evaluate(const BoundSpec& spec, Real x, Direction side) {
  if (side == Direction::kBoth) throw DomainError("evaluate needs a single side");
  if (spec.direction != Direction::kBoth && spec.direction != side) {
    throw DomainError(spec.id + " has no " + std::string(direction_name(side)) + " side");
  }
  if (x < spec.valid_from) {
    throw ValidityError(spec.id + " is valid from " + fmt(spec.valid_from) + ", not at x = " + fmt(x));
  }
  if (spec.valid_to && x > *spec.valid_to) {
    throw ValidityError(spec.id + " is valid up to " + fmt(*spec.valid_to) + ", not at x = " + fmt(x));
  }
  return std::visit(
      [&](const auto& f) -> Real {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RationalLog>) {
          return pana_bound(x, spec);
        } else if constexpr (std::is_same_v<F, LiBand>) {
          return li(x) + f.sqrt_coeff * std::sqrt(x) / std::log(x);
        } else {
          const Real band = std::sqrt(x) / (8 * kPi) * std::log(x / std::log(x));
          return side == Direction::kLower ? li(x) - band : li(x) + band;
        }
      },
      spec.form);
}

std::uint64_t gamma_k(const std::vector<Real>& a, Real eps, std::uint64_t search_cap) {
  for (Real v : a) {
    if (v < 0) throw DomainError("gamma_k needs non-negative coefficients");
  }
  if (eps < 0) throw DomainError("gamma_k needs eps >= 0");
  // The right-hand side decreases in x, so the defining property is monotone
  // and the threshold is the first integer where it holds.
  auto holds = [&](std::uint64_t x) {
    const Real L = std::log(static_cast<Real>(x));
    Real rhs = 0;
    Real pw = 1;
    for (Real v : a) {
      pw *= L;
      rhs += v / pw;
    }
    rhs += eps / pw;
    return kLog2 >= rhs;
  };
  if (holds(2)) return 2;
  std::uint64_t lo = 2;  // fails
  std::uint64_t hi = 4;
  while (!holds(hi)) {
    lo = hi;
    if (hi >= search_cap / 2) {
      if (hi < search_cap && holds(search_cap)) {
        hi = search_cap;
        break;
      }
      throw SearchCapError("gamma_k: inequality still fails at the search cap " + std::to_string(search_cap));
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<BoundSpec> registry(Real three_term_from) {
  std::vector<BoundSpec> r;
  r.push_back(BoundSpec::make("dusart_lower", Direction::kLower, RationalLog{{}, 0}, kDusartFrom, std::nullopt,
                              Condition::kNone, "Dusart, pi(x) >= x/(log x - 1) for x >= 5393"));
  r.push_back(BoundSpec::make("axler_f1_lower", Direction::kLower, RationalLog{{1}, 0}, kF1From, std::nullopt,
                              Condition::kNone, "explicit lower bound: pi(x) >= f_1(x) for x >= 468049"));
  auto f115 = BoundSpec::make("axler_f115_upper", Direction::kUpper, RationalLog{{1.15L}, 0}, kF115From, std::nullopt,
                              Condition::kNone, "explicit upper bound: pi(x) <= f_1.15(x) for x >= 38284442297");
  f115.desk_auditable = false;
  r.push_back(std::move(f115));
  auto three = BoundSpec::make("axler_3term_upper", Direction::kUpper, RationalLog{{1, 3.15L, 14.25L}, 0},
                               three_term_from, std::nullopt, Condition::kNone,
                               "explicit three-term upper bound (a = 1, 3.15, 14.25); validity threshold configurable");
  three.desk_auditable = three_term_from <= 1e10L;
  r.push_back(std::move(three));
  r.push_back(BoundSpec::make("pana2_lower", Direction::kLower, RationalLog{{1, 2.85L}, 0}, kPanaAlpha2,
                              std::nullopt, Condition::kNone, "explicit two-term lower bound: a1=1, a2=2.85, x >= 38099531"));
  auto pana_up = BoundSpec::make("pana2_upper", Direction::kUpper, RationalLog{{1, 2.85L}, kPanaEps2}, kPanaBeta2,
                                 std::nullopt, Condition::kNone,
                                 "explicit two-term upper bound: a1=1, a2=2.85, eps=0.70863503301170907614119, "
                                 "x >= 14000264036190262");
  pana_up.desk_auditable = false;
  r.push_back(std::move(pana_up));
  r.push_back(BoundSpec::make("li_upper", Direction::kUpper, LiBand{0}, 2, kLiValidTo, Condition::kNone,
                              "Dusart 2018: pi(x) <= li(x) for 2 <= x <= 1e20"));
  r.push_back(BoundSpec::make("li_lower_band", Direction::kLower, LiBand{-2}, kLiBandFrom, kLiValidTo,
                              Condition::kNone,
                              "Dusart 2018: li(x) - 2 sqrt(x)/log x <= pi(x) for 1090877 <= x <= 1e20"));
  r.push_back(BoundSpec::make("rh_band", Direction::kBoth, RhBand{}, kRhBandFrom, std::nullopt,
                              Condition::kRiemannHypothesis,
                              "Schoenfeld/Dusart: |pi(x) - li(x)| <= sqrt(x) log(x / log x) / (8 pi) under RH, x >= 5639"));
  return r;
}

const BoundSpec& find(const std::vector<BoundSpec>& specs, std::string_view id) {
  for (const auto& s : specs) {
    if (s.id == id) return s;
  }
  throw DomainError("unknown bound '" + std::string(id) + "'");
}

std::string csv_header() { return "spec_id,x,pi_x,bound_x,direction,violated"; }

std::string csv_row(const std::string& spec_id, const AuditPoint& p) {
  return spec_id + "," + std::to_string(p.x) + "," + std::to_string(p.pi_x) + "," + fmt(p.bound_x) + "," +
         std::string(direction_name(p.side)) + "," + (p.violated ? "1" : "0");
}

}  // namespace hlc::bounds
