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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hlc/bounds.hpp"
#include "hlc/error.hpp"
#include "hlc/logint.hpp"
#include "hlc/sieve.hpp"

namespace hlc::bounds {
namespace {

const std::vector<BoundSpec>& specs() {
  static const auto r = registry();
  return r;
}

// Independent check of the gamma_k inequality at one point.
bool gamma_holds(const std::vector<Real>& a, Real eps, Real x) {
  const Real l = std::log(x);
  Real rhs = eps / std::pow(l, static_cast<Real>(a.size()));
  for (std::size_t j = 0; j < a.size(); ++j) rhs += a[j] / std::pow(l, static_cast<Real>(j + 1));
  return kLog2 >= rhs;
}

TEST(Bounds, FcExamples) {
  const Real e2 = std::exp(2.0L);
  EXPECT_NEAR(static_cast<double>(f_c(e2, 1)), static_cast<double>(2 * e2), 1e-12);
  EXPECT_NEAR(static_cast<double>(f_c(e2, 0)), static_cast<double>(e2), 1e-12);
  EXPECT_GT(f_c(1e6L, 1.1L), f_c(1e6L, 1.0L));
  EXPECT_THROW(f_c(std::exp(1.0L), 0), SingularityError);
  EXPECT_THROW(f_c(1, 0), DomainError);
}

TEST(Bounds, RegistryContents) {
  const std::vector<std::string> ids{"dusart_lower",    "axler_f1_lower", "axler_f115_upper",
                                     "axler_3term_upper", "pana2_lower",   "pana2_upper",
                                     "li_upper",        "li_lower_band",  "rh_band"};
  ASSERT_EQ(specs().size(), ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(specs()[i].id, ids[i]);
  EXPECT_EQ(find(specs(), "rh_band").conditional, Condition::kRiemannHypothesis);
  EXPECT_EQ(find(specs(), "rh_band").direction, Direction::kBoth);
  EXPECT_FALSE(find(specs(), "axler_f115_upper").desk_auditable);
  EXPECT_EQ(find(specs(), "axler_3term_upper").valid_from, kF115From);
  EXPECT_EQ(find(registry(1e6L), "axler_3term_upper").valid_from, 1e6L);
  EXPECT_EQ(*find(specs(), "li_upper").valid_to, 1e20L);
  EXPECT_THROW(find(specs(), "nope"), DomainError);
}

TEST(Bounds, MakeChecksInvariants) {
  EXPECT_THROW(BoundSpec::make("x", Direction::kLower, RationalLog{{}, 0}, 1, {}, Condition::kNone, ""), DomainError);
  EXPECT_THROW(BoundSpec::make("x", Direction::kLower, RationalLog{{-1}, 0}, 100, {}, Condition::kNone, ""),
               DomainError);
  // log 10 - 1 - 5/log 10 < 0.
  EXPECT_THROW(BoundSpec::make("x", Direction::kLower, RationalLog{{5}, 0}, 10, {}, Condition::kNone, ""),
               SingularityError);
  EXPECT_THROW(BoundSpec::make("x", Direction::kLower, RhBand{}, 5639, {}, Condition::kRiemannHypothesis, ""),
               DomainError);
}

TEST(Bounds, PanaBound) {
  const auto plain = BoundSpec::make("p", Direction::kLower, RationalLog{{}, 0}, 10, {}, Condition::kNone, "");
  const Real x = 1e7L;
  EXPECT_NEAR(static_cast<double>(pana_bound(x, plain)), static_cast<double>(x / (std::log(x) - 1)), 1e-6);
  const auto& lower = find(specs(), "pana2_lower");
  EXPECT_LE(pana_bound(38'099'531.0L, lower), static_cast<Real>(Sieve().pi(38'099'531)));
  EXPECT_THROW(pana_bound(1e6L, lower), ValidityError);
  EXPECT_THROW(pana_bound(1e6L, find(specs(), "li_upper")), DomainError);
}

TEST(Bounds, MoreSubtractedTermsGiveLargerValues) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(4, 9);
  const RationalLog zero{{}, 0}, one{{1}, 0}, two{{1, 2.85L}, 0}, two_eps{{1, 2.85L}, kPanaEps2};
  for (int i = 0; i < 1000; ++i) {
    const Real x = std::pow(10.0L, static_cast<Real>(u(rng)));
    const Real d0 = rational_log_denominator(zero, x), d1 = rational_log_denominator(one, x);
    const Real d2 = rational_log_denominator(two, x), d3 = rational_log_denominator(two_eps, x);
    ASSERT_GE(d0, d1);
    ASSERT_GE(d1, d2);
    ASSERT_GE(d2, d3);
    if (d3 > 0) ASSERT_LE(x / d0, x / d3);
  }
}

TEST(Bounds, Bands) {
  EXPECT_NEAR(static_cast<double>(rh_band(5639)), 19.3654181330861057554585998683, 1e-12);
  EXPECT_NEAR(static_cast<double>(li_lower_band(1'090'877)), 85034.273186592409055732869214, 1e-8);
  EXPECT_GT(li_lower_band(1'090'877), 0);
  for (Real x : {5639.0L, 1e6L, 1e12L, 1e19L}) EXPECT_LT(rh_band(x), std::sqrt(x) / (8 * kPi) * std::log(x));
  for (Real x : {1090877.0L, 1e9L, 1e15L}) EXPECT_LT(li_lower_band(x), li(x));
  EXPECT_THROW(rh_band(5638), ValidityError);
  EXPECT_THROW(li_lower_band(1'090'876), ValidityError);
}

TEST(Bounds, EvaluateSides) {
  const auto& rh = find(specs(), "rh_band");
  const Real x = 1e6L;
  EXPECT_NEAR(static_cast<double>(evaluate(rh, x, Direction::kUpper) - evaluate(rh, x, Direction::kLower)),
              static_cast<double>(2 * rh_band(x)), 1e-9);
  EXPECT_THROW(evaluate(find(specs(), "dusart_lower"), x, Direction::kUpper), DomainError);
  EXPECT_THROW(evaluate(rh, x, Direction::kBoth), DomainError);
  EXPECT_THROW(evaluate(find(specs(), "li_upper"), 1e21L, Direction::kUpper), ValidityError);
}

TEST(Bounds, GammaK) {
  const std::vector<Real> two{1, 2.85L};
  EXPECT_EQ(gamma_k(two, kPanaEps2), 23u);
  EXPECT_TRUE(gamma_holds(two, kPanaEps2, 23));
  EXPECT_FALSE(gamma_holds(two, kPanaEps2, 22));
  EXPECT_EQ(gamma_k({}, 0), 2u);
  EXPECT_EQ(gamma_k({0, 0}, 0), 2u);
  EXPECT_EQ(gamma_k({1}, 0), 5u);
  EXPECT_FALSE(gamma_holds({1}, 0, 4));
  for (Real x = 5; x < 1e6L; x *= 1.7L) EXPECT_TRUE(gamma_holds({1}, 0, x));
  EXPECT_THROW(gamma_k({1e6L}, 0, 1000), SearchCapError);
  EXPECT_THROW(gamma_k({-1}, 0), DomainError);
}

TEST(Audit, KnownBoundsHoldOnSmallRanges) {
  const Sieve s;
  EXPECT_TRUE(audit(find(specs(), "dusart_lower"), 5393, 10'000'000, s).violations.empty());
  EXPECT_TRUE(audit(find(specs(), "axler_f1_lower"), 468'049, 10'000'000, s).violations.empty());
  EXPECT_TRUE(audit(find(specs(), "li_upper"), 2, 10'000'000, s).violations.empty());
  EXPECT_TRUE(audit(find(specs(), "rh_band"), 5639, 10'000'000, s).violations.empty());
}

TEST(Audit, DusartFailsJustBelowItsThreshold) {
  // The threshold is sharp: the bound fails somewhere below 5393.
  const auto spec = BoundSpec::make("d", Direction::kLower, RationalLog{{}, 0}, 5, {}, Condition::kNone, "");
  const auto r = audit(spec, 5, 5392, Sieve());
  ASSERT_FALSE(r.violations.empty());
  EXPECT_LE(r.violations.back().x, 5392u);
}

TEST(Audit, SabotagedBoundIsCaught) {
  const auto bad = BoundSpec::make("bad", Direction::kLower, RationalLog{{10}, 0}, 1e4L, {}, Condition::kNone, "");
  const auto r = audit(bad, 10'000, 100'000, Sieve());
  ASSERT_FALSE(r.violations.empty());
  const Sieve s;
  for (const auto& v : r.violations) {
    EXPECT_TRUE(v.violated);
    EXPECT_EQ(v.pi_x, s.pi(v.x));
    EXPECT_GT(v.bound_x, static_cast<Real>(v.pi_x));
  }
}

TEST(Audit, ExtremalPointsMatchDenseCheck) {
  // A slightly inflated li bound fails somewhere; the gap-extremal audit
  // must report a violation iff some integer in the range violates.
  const auto spec = BoundSpec::make("tight", Direction::kLower, LiBand{-0.1L}, 1000, {}, Condition::kNone, "");
  const Sieve s;
  const PiIndex idx(s, 300'000);
  bool dense = false;
  for (std::uint64_t x = 1000; x <= 300'000; ++x) {
    dense = dense || evaluate(spec, static_cast<Real>(x), Direction::kLower) > static_cast<Real>(idx.pi(x));
  }
  const auto r = audit(spec, 1000, 300'000, s);
  EXPECT_EQ(!r.violations.empty(), dense);
}

TEST(Audit, ShardAndTableAgree) {
  const auto& spec = find(specs(), "rh_band");
  SieveConfig c;
  c.segment_bytes = 4096;
  const Sieve s(c);
  AuditOptions one;
  const auto base = audit(spec, 5639, 2'000'000, s, one);
  for (unsigned shards : {2u, 5u}) {
    AuditOptions o;
    o.shards = shards;
    EXPECT_EQ(audit(spec, 5639, 2'000'000, s, o), base);
  }
  EXPECT_EQ(audit(spec, 5639, 2'000'000, s.primes_up_to(2'000'000)), base);
  const auto bad = BoundSpec::make("bad", Direction::kLower, RationalLog{{10}, 0}, 1e4L, {}, Condition::kNone, "");
  AuditOptions four;
  four.shards = 4;
  EXPECT_EQ(audit(bad, 10'000, 100'000, s, four), audit(bad, 10'000, 100'000, s));
}

TEST(Audit, SinkSeesEveryPoint) {
  std::vector<AuditPoint> seen;
  AuditOptions o;
  o.sink = [&](const AuditPoint& p) { seen.push_back(p); };
  const auto r = audit(find(specs(), "dusart_lower"), 5393, 6000, Sieve(), o);
  EXPECT_EQ(seen.size(), r.points_checked);
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LE(seen[i - 1].x, seen[i].x);
  EXPECT_EQ(csv_header(), "spec_id,x,pi_x,bound_x,direction,violated");
  EXPECT_EQ(csv_row("dusart_lower", seen.front()).rfind("dusart_lower,", 0), 0u);
}

TEST(Audit, Errors) {
  SieveConfig c;
  c.max_limit = 1'000'000;
  const Sieve s(c);
  EXPECT_THROW(audit(find(specs(), "dusart_lower"), 5393, 2'000'000, s), CapacityError);
  EXPECT_THROW(audit(find(specs(), "dusart_lower"), 100, 200, s), ValidityError);
  EXPECT_THROW(audit(find(specs(), "dusart_lower"), 9000, 8000, s), EmptyRangeError);
}

}  // namespace
}  // namespace hlc::bounds
