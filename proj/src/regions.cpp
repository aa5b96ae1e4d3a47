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

#include "hlc/regions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <json.hpp>

#include "hlc/error.hpp"

namespace hlc::regions {
namespace {

std::string fmt(Real v, int digits = 21) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*Lg", digits, v);
  return buf;
}

// Outcome of "lhs >= rhs" under the margin rule.
struct Compare {
  bool holds = false;
  bool uncertain = false;
};

Compare at_least(Real lhs, Real rhs) {
  const Real scale = std::fabs(rhs) > 1 ? std::fabs(rhs) : 1;
  const Real margin = kHypothesisMargin * scale;
  if (lhs >= rhs + margin) return {true, false};
  if (lhs > rhs - margin) return {false, true};
  return {false, false};
}

}  // namespace

void RegionParams::validate() const {
  if (!(b > 1 && b < 2)) throw DomainError("b must lie in (1, 2)");
  if (!(B > 0)) throw DomainError("B must be positive");
  if (!(s >= 1)) throw DomainError("s must be at least 1");
  if (!(r >= s)) throw DomainError("r must be at least s");
}

Real lambda_b(const RegionParams& p) {
  p.validate();
  const Real l1 = std::log1p(1 / p.r);
  const Real ls = std::log(p.s);
  const Real ls1 = std::log(p.s + 1);
  return ((p.b - 1) * (p.r + 1) - ls1 * ls) / (2 * p.r * l1 + 2 * ls1) + (std::log(p.r) - l1) / 2;
}

Real eta_b(const RegionParams& p) {
  p.validate();
  const Real l1 = std::log1p(1 / p.r);
  const Real ls = std::log(p.s);
  const Real ls1 = std::log(p.s + 1);
  const Real num = p.r * std::log(p.r) - ls - (1 + ls1 * ls) * l1 - p.b * p.r * ls;
  return num / (p.r * l1 + ls1) + l1 * ls;
}

ChiPhi chi_phi(const RegionParams& p) {
  const Real lam = lambda_b(p);
  const Real chi = lam * lam + eta_b(p);
  return {chi, chi > 0 ? chi : Real{0}};
}

X0Terms x0_terms(const RegionParams& p) {
  X0Terms t;
  const Real lam = lambda_b(p);
  const ChiPhi cp = chi_phi(p);
  t.exp_term = std::exp(lam + std::sqrt(cp.phi));
  t.sieve_term = 468049 * p.r;
  t.b_term = p.B / (1 + 1 / p.r);
  const Real m = std::fmax(t.exp_term, std::fmax(t.sieve_term, t.b_term));
  if (!(m < 9223372036854775807.0L)) throw CapacityError("x0 threshold exceeds 2^63 - 1");
  t.x0 = ceil_to_u64(m);
  return t;
}

std::uint64_t x0_threshold(const RegionParams& p) { return x0_terms(p).x0; }

bool verify_chain(std::span<const ChainRow> rows, Real b, Real B, Real s_min, std::uint64_t cap,
                  std::optional<Real> outer_ratio) {
  if (rows.empty()) throw DomainError("verify_chain needs at least one row");
  constexpr Real kLinkTolerance = 1e-9L;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (std::fabs(rows[i].s - rows[i + 1].r) > kLinkTolerance) {
      throw ChainError("chain breaks between rows " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                       ": s = " + fmt(rows[i].s, 12) + " but next r = " + fmt(rows[i + 1].r, 12));
    }
  }
  bool ok = true;
  if (outer_ratio && std::fabs(rows.front().r - *outer_ratio) > kLinkTolerance) ok = false;
  if (rows.back().s > s_min) ok = false;
  for (const auto& row : rows) {
    if (x0_threshold({b, B, row.r, row.s}) > cap) ok = false;
  }
  return ok;
}

std::vector<ReferenceRow> reference_chain() {
  return {
      {{1950.0L, 1949.9652L}, 38284409814ULL},    {{1949.9652L, 1949.8838L}, 38284393330ULL},
      {{1949.8838L, 1949.6933L}, 38284407670ULL}, {{1949.6933L, 1949.2476L}, 38284394575ULL},
      {{1949.2476L, 1948.2049L}, 38284419151ULL}, {{1948.2049L, 1945.7667L}, 38284398522ULL},
      {{1945.7667L, 1940.0707L}, 38284417850ULL}, {{1940.0707L, 1926.7942L}, 38284399116ULL},
      {{1926.7942L, 1896.0125L}, 38284426596ULL}, {{1896.0125L, 1825.5323L}, 38284405535ULL},
      {{1825.5323L, 1668.8817L}, 38284440640ULL}, {{1668.8817L, 1344.8932L}, 38284412784ULL},
      {{1344.8932L, 785.8821L}, 38284406728ULL},  {{785.8821L, 189.9788L}, 38284305355ULL},
      {{189.9788L, 109.0L}, 38083977941ULL},
  };
}

std::string x0_csv_header() { return "r,s,exp_term,sieve_term,B_term,x0"; }

std::string x0_csv_row(const RegionParams& p, const X0Terms& t) {
  return fmt(p.r, 10) + "," + fmt(p.s, 10) + "," + fmt(t.exp_term) + "," + fmt(t.sieve_term) + "," +
         fmt(t.b_term) + "," + std::to_string(t.x0);
}

Real udrescu_threshold(Real eps) {
  if (!(eps > 0 && eps <= 1)) throw DomainError("udrescu_threshold needs eps in (0, 1]");
  return std::exp(std::sqrt(kUdrescuConstant / std::log1p(eps)));
}

Real multi_term_threshold(int k, Real c, Real eps, Real alpha, Real beta, Real gamma) {
  if (k < 1) throw DomainError("multi_term_threshold needs k >= 1");
  if (!(eps > 0)) throw DomainError("multi_term_threshold needs eps > 0");
  if (!(c > eps)) throw DomainError("multi_term_threshold needs c > eps");
  const Real e = std::exp(std::pow(c * c / (2 * (c - eps)), 1.0L / k));
  return std::fmax(std::fmax(alpha, beta), std::fmax(gamma, e));
}

Real li_pair_threshold(Real m) {
  const Real L = std::log(m);
  return 2 * std::sqrt(m) * (1 - 2 * kC1 / (L + kC1));
}

Real li_pair_threshold_closed_form(Real m) {
  const Real root = std::sqrt(m);
  return 2 * root * (std::log(2 * root) - 1) / (std::log(root / 2) + 1);
}

std::string_view source_name(Source s) {
  switch (s) {
    case Source::kBandRatio1950:
      return "THM_1_1";
    case Source::kRatioWitness:
      return "THM_1_2";
    case Source::kLogSquare:
      return "THM_1_3";
    case Source::kLiRange:
      return "THM_1_4";
    case Source::kRiemann:
      return "THM_1_5";
    case Source::kScanned:
      return "PROP_2_4";
    case Source::kDirect:
      return "DIRECT";
  }
  return "?";
}

CoverageVerdict coverage_verdict(Wide m, Wide n, const DirectCheck& direct) {
  if (n < 2 || m < n) throw DomainError("coverage_verdict needs m >= n >= 2");
  CoverageVerdict v;
  v.m = m;
  v.n = n;
  const Real mr = to_real(m);
  const Real nr = to_real(n);
  const Real L = std::log(mr);
  const Wide sum = m + n;  // m < 2^127 in practice; wraps only beyond 1.7e38
  if (sum < m) throw DomainError("m + n overflows 128 bits");

  {
    // m/1950 <= n, exactly: n >= ceil(m / 1950).
    Guarantee g;
    g.source = Source::kBandRatio1950;
    const Wide need = m / 1950 + (m % 1950 != 0 ? 1 : 0);
    g.required = to_real(need);
    g.satisfied = n >= need;
    v.guarantees.push_back(g);
  }
  {
    Guarantee g;
    g.source = Source::kRatioWitness;
    g.epsilon = nr / mr;
    const Real exponent = std::sqrt(kUdrescuConstant / std::log1p(g.epsilon));
    if (exponent < 11000) {
      g.required = std::exp(exponent);
      const Compare c = at_least(mr, g.required);
      g.satisfied = c.holds;
      g.boundary_uncertain = c.uncertain;
    } else {
      g.required = std::numeric_limits<Real>::infinity();
    }
    v.guarantees.push_back(g);
  }
  {
    Guarantee g;
    g.source = Source::kLogSquare;
    g.required = kC0 * mr / (L * L);
    const Compare c = at_least(nr, g.required);
    g.satisfied = c.holds;
    g.boundary_uncertain = c.uncertain;
    v.guarantees.push_back(g);
  }
  {
    Guarantee g;
    g.source = Source::kLiRange;
    g.cap = Wide{10000000000ULL} * 10000000000ULL;  // 1e20
    g.required = li_pair_threshold(mr);
    const Compare c = at_least(nr, g.required);
    const bool within = sum <= *g.cap;
    g.satisfied = within && c.holds;
    g.boundary_uncertain = within && c.uncertain;
    v.guarantees.push_back(g);
  }
  {
    Guarantee g;
    g.source = Source::kRiemann;
    g.rh_conditional = true;
    g.required = kC2 * std::sqrt(mr) * L * std::log(mr * std::pow(L, 8));
    const Compare c = at_least(nr, g.required);
    g.satisfied = c.holds;
    g.boundary_uncertain = c.uncertain;
    v.guarantees.push_back(g);
  }
  {
    Guarantee g;
    g.source = Source::kScanned;
    g.cap = kSegalVerifiedBound;
    g.required = to_real(*g.cap);
    g.satisfied = sum <= *g.cap;
    v.guarantees.push_back(g);
  }
  if (direct.pi && direct.budget > 0 && sum <= direct.budget) {
    Guarantee g;
    g.source = Source::kDirect;
    g.cap = direct.budget;
    const auto mm = static_cast<std::uint64_t>(m);
    const auto nn = static_cast<std::uint64_t>(n);
    const std::uint64_t lhs = direct.pi(mm + nn);
    const std::uint64_t rhs = direct.pi(mm) + direct.pi(nn);
    g.required = static_cast<Real>(lhs);
    g.satisfied = lhs <= rhs;
    v.guarantees.push_back(g);
  }

  for (const auto& g : v.guarantees) {
    if (!g.satisfied) continue;
    if (!g.rh_conditional) v.covered_unconditionally = true;
    v.covered_under_rh = true;
  }
  return v;
}

std::string to_json(const CoverageVerdict& v) {
  using nlohmann::ordered_json;
  ordered_json gs = ordered_json::array();
  for (const auto& g : v.guarantees) {
    ordered_json j;
    j["source"] = std::string(source_name(g.source));
    j["conditional"] = g.rh_conditional ? "RH" : "NONE";
    j["cap"] = g.cap ? ordered_json(to_string(*g.cap)) : ordered_json(nullptr);
    j["satisfied"] = g.satisfied;
    j["boundary_uncertain"] = g.boundary_uncertain;
    j["required"] = fmt(g.required, 19);
    if (g.source == Source::kRatioWitness) j["epsilon"] = fmt(g.epsilon, 19);
    gs.push_back(std::move(j));
  }
  ordered_json out;
  out["m"] = to_string(v.m);
  out["n"] = to_string(v.n);
  out["guarantees"] = std::move(gs);
  out["covered_unconditionally"] = v.covered_unconditionally;
  out["covered_under_rh"] = v.covered_under_rh;
  return out.dump();
}

}  // namespace hlc::regions
