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

#include <json.hpp>

#include "hlc/error.hpp"
#include "hlc/regions.hpp"
#include "hlc/sieve.hpp"

namespace hlc::regions {
namespace {

// Oracle transcriptions of the threshold formulas, kept separate from the
// library on purpose.
Real lambda_oracle(Real b, Real r, Real s) {
  const Real l1r = std::log(1 + 1 / r);
  return ((b - 1) * (r + 1) - std::log(s + 1) * std::log(s)) / (2 * r * l1r + 2 * std::log(s + 1)) +
         (std::log(r) - l1r) / 2;
}

Real eta_oracle(Real b, Real r, Real s) {
  const Real l1r = std::log(1 + 1 / r);
  const Real kappa = r * l1r + std::log(s + 1);
  const Real num = r * std::log(r) - std::log(s) - (1 + std::log(s + 1) * std::log(s)) * l1r - b * r * std::log(s);
  return num / kappa + l1r * std::log(s);
}

// f_1(x) + f_1(y) - f_b(x + y): a lower bound for pi(x) + pi(y) - pi(x + y)
// once y >= 468049 and x + y >= B.
Real h_lower(Real b, Real x, Real y) {
  auto f = [](Real t, Real c) { return t / (std::log(t) - 1 - c / std::log(t)); };
  return f(x, 1) + f(y, 1) - f(x + y, b);
}

RegionParams params(Real r, Real s) { return {kReferenceb, kReferenceB, r, s}; }

TEST(Regions, HandReducedExamples) {
  EXPECT_NEAR(static_cast<double>(lambda_b(params(1, 1))), static_cast<double>(0.3L / (4 * kLog2) - kLog2 / 2), 1e-15);
  EXPECT_NEAR(static_cast<double>(lambda_b(params(1, 1))), -0.2384, 1e-4);
  EXPECT_NEAR(static_cast<double>(eta_b(params(1, 1))), -0.5, 1e-15);
  const ChiPhi cp = chi_phi(params(1, 1));
  EXPECT_LT(cp.chi, 0);
  EXPECT_EQ(cp.phi, 0);
  // With s = 1 every b-term drops out of eta.
  EXPECT_EQ(eta_b({1.1L, 1, 5, 1}), eta_b({1.9L, 1, 5, 1}));
}

TEST(Regions, FormulasMatchOracle) {
  for (const auto& row : reference_chain()) {
    const auto p = params(row.row.r, row.row.s);
    EXPECT_NEAR(static_cast<double>(lambda_b(p)), static_cast<double>(lambda_oracle(p.b, p.r, p.s)), 1e-13);
    EXPECT_NEAR(static_cast<double>(eta_b(p)), static_cast<double>(eta_oracle(p.b, p.r, p.s)), 1e-11);
    const ChiPhi cp = chi_phi(p);
    EXPECT_GT(cp.chi, 0);
    EXPECT_EQ(cp.phi, cp.chi);
    // Continuity in r.
    EXPECT_LT(std::fabs(lambda_b(p) - lambda_b(params(p.r + 1e-9L, p.s))), 1e-6L);
  }
}

TEST(Regions, ReferenceTable) {
  for (const auto& row : reference_chain()) {
    const auto t = x0_terms(params(row.row.r, row.row.s));
    const auto d = static_cast<std::int64_t>(t.x0) - static_cast<std::int64_t>(row.reference_x0);
    EXPECT_LE(std::abs(d), 1) << static_cast<double>(row.row.r);
    EXPECT_EQ(t.x0, x0_threshold(params(row.row.r, row.row.s)));
    EXPECT_GT(static_cast<Real>(t.x0), t.sieve_term);
  }
  EXPECT_EQ(x0_threshold(params(1950, 1949.9652L)), 38'284'409'814u);
  EXPECT_NEAR(static_cast<double>(x0_threshold(params(189.9788L, 109))), 38'083'977'941.0, 1.0);
}

TEST(Regions, ThresholdGuaranteesPositiveLowerBound) {
  // At x = x0 the explicit-bound estimate for pi(x) + pi(y) - pi(x + y) is
  // non-negative across the band.
  for (const auto& row : reference_chain()) {
    const auto p = params(row.row.r, row.row.s);
    const Real x = static_cast<Real>(x0_threshold(p));
    for (int i = 0; i <= 20; ++i) {
      const Real y = x / p.r + (x / p.s - x / p.r) * i / 20;
      ASSERT_GE(h_lower(p.b, x, y), 0) << static_cast<double>(p.r) << " " << i;
    }
  }
}

TEST(Regions, SmallRowThreshold) {
  const auto t = x0_terms({1.15L, 1000, 2, 1});
  EXPECT_LT(t.exp_term, t.sieve_term);
  EXPECT_EQ(t.x0, static_cast<std::uint64_t>(std::ceil(std::max(t.sieve_term, t.b_term))));
}

TEST(Regions, ParamValidation) {
  EXPECT_THROW(lambda_b(params(1, 2)), DomainError);
  EXPECT_THROW(lambda_b(params(2, 0.5L)), DomainError);
  EXPECT_THROW(eta_b({2.5L, 1, 2, 1}), DomainError);
}

TEST(Regions, Chain) {
  std::vector<ChainRow> rows;
  for (const auto& r : reference_chain()) rows.push_back(r.row);
  EXPECT_TRUE(verify_chain(rows, kReferenceb, kReferenceB, 109, kReferenceCap));
  EXPECT_FALSE(verify_chain(rows, kReferenceb, kReferenceB, 109, kReferenceCap - 1));
  EXPECT_FALSE(verify_chain(rows, kReferenceb, kReferenceB, 108, kReferenceCap));

  const std::vector<ChainRow> single{{1950, 1950}};
  const auto x0 = x0_threshold(params(1950, 1950));
  EXPECT_TRUE(verify_chain(single, kReferenceb, kReferenceB, 1950, x0));
  EXPECT_FALSE(verify_chain(single, kReferenceb, kReferenceB, 1950, x0 - 1));

  const std::vector<ChainRow> broken{{1950, 1949}, {1948, 1900}};
  EXPECT_THROW(verify_chain(broken, kReferenceb, kReferenceB, 109, kReferenceCap), ChainError);
  EXPECT_THROW(verify_chain({}, kReferenceb, kReferenceB, 109, kReferenceCap), DomainError);
}

TEST(Regions, X0Csv) {
  EXPECT_EQ(x0_csv_header(), "r,s,exp_term,sieve_term,B_term,x0");
  const auto p = params(1950, 1949.9652L);
  const auto row = x0_csv_row(p, x0_terms(p));
  EXPECT_NE(row.find(",38284409814"), std::string::npos);
}

TEST(Regions, RatioThreshold) {
  const Real t = udrescu_threshold(1.0L / 1950);
  EXPECT_NEAR(static_cast<double>(t), 168527259430.609206996797, 1e-3);
  EXPECT_LE(t, 168'527'259'431.0L);
  EXPECT_NEAR(static_cast<double>(udrescu_threshold(1)), 2.019886817429357788830, 1e-15);
  for (Real e : {1e-4L, 1e-3L, 1e-2L}) EXPECT_LT(udrescu_threshold(2 * e), udrescu_threshold(e));
  EXPECT_THROW(udrescu_threshold(0), DomainError);
  EXPECT_THROW(udrescu_threshold(1.5L), DomainError);
}

TEST(Regions, RatioWeightDecreasing) {
  auto f = [](Real x) { return x * std::exp(std::sqrt(kUdrescuConstant / std::log1p(x))); };
  Real prev = f(1e-9L);
  for (int i = 1; i <= 1000; ++i) {
    const Real x = (1.0L / 1950) * i / 1000;
    const Real v = f(x);
    ASSERT_LT(v, prev) << i;
    prev = v;
  }
  EXPECT_GE(f(1.0L / 1950), 86'424'235.0L);
}

TEST(Regions, MultiTermThreshold) {
  EXPECT_NEAR(static_cast<double>(multi_term_threshold(1, 1, 0.5L, 0, 0, 0)), std::exp(1.0), 1e-15);
  const Real eps = 0.3L;
  EXPECT_NEAR(static_cast<double>(multi_term_threshold(2, 2 * eps, eps, 0, 0, 0)),
              static_cast<double>(std::exp(std::sqrt(2 * eps))), 1e-15);
  const Real pana_eps = 0.70863503301170907614119L;
  const Real t = multi_term_threshold(2, kC0, pana_eps, 38'099'531, 14'000'264'036'190'262.0L, 23);
  EXPECT_GE(t, 14'000'264'036'190'262.0L);
  EXPECT_LE(t, 14'000'264'036'190'262.0L + 1e10L);
  EXPECT_THROW(multi_term_threshold(2, 0.5L, 0.5L, 0, 0, 0), DomainError);
  EXPECT_THROW(multi_term_threshold(0, 1, 0.5L, 0, 0, 0), DomainError);
}

TEST(Regions, LiPairClosedForm) {
  for (Real m : {1e6L, 1e10L, 1e18L}) {
    const Real a = li_pair_threshold(m), b = li_pair_threshold_closed_form(m);
    EXPECT_LT(std::fabs(a - b) / a, 1e-12L) << static_cast<double>(m);
  }
}

TEST(Verdict, Examples) {
  DirectCheck direct;
  const Sieve sieve;
  direct.pi = [&](std::uint64_t x) { return sieve.pi(x); };
  direct.budget = 100'000'000;
  const auto v = coverage_verdict(1'000'000, 600, direct);
  EXPECT_TRUE(v.covered_unconditionally);
  bool band = false, checked_direct = false;
  for (const auto& g : v.guarantees) {
    if (g.source == Source::kBandRatio1950) band = g.satisfied;
    if (g.source == Source::kDirect) checked_direct = g.satisfied;
  }
  EXPECT_TRUE(band);
  EXPECT_TRUE(checked_direct);

  const auto small = coverage_verdict(2, 2);
  EXPECT_TRUE(small.covered_unconditionally);
  EXPECT_TRUE(std::any_of(small.guarantees.begin(), small.guarantees.end(),
                          [](const Guarantee& g) { return g.source == Source::kScanned && g.satisfied; }));

  const Wide m = Wide{1'000'000'000'000'000ULL} * 1'000'000'000'000'000ULL;  // 1e30
  const auto big = coverage_verdict(m, 100'000'000'000'000ULL);
  EXPECT_FALSE(big.covered_unconditionally);
  EXPECT_FALSE(big.covered_under_rh);
  for (const auto& g : big.guarantees) {
    if (g.source == Source::kRiemann) {
      EXPECT_FALSE(g.satisfied);
      EXPECT_NEAR(static_cast<double>(g.required), 5.7e17, 0.1e17);
    }
  }
  EXPECT_THROW(coverage_verdict(5, 6), DomainError);
  EXPECT_THROW(coverage_verdict(5, 1), DomainError);
}

TEST(Verdict, JsonShape) {
  const auto j = nlohmann::json::parse(to_json(coverage_verdict(1'000'000, 600)));
  EXPECT_EQ(j["m"], "1000000");
  EXPECT_EQ(j["guarantees"][0]["source"], "THM_1_1");
  EXPECT_TRUE(j["covered_unconditionally"].get<bool>());
}

TEST(Verdict, BoundaryIsNotOverclaimed) {
  // n equal to the log-square threshold within rounding is marked uncertain.
  const Real m = 1e12L;
  const Real need = kC0 * m / (std::log(m) * std::log(m));
  const auto n = static_cast<std::uint64_t>(std::ceil(need));
  const auto v = coverage_verdict(static_cast<Wide>(m), n);
  for (const auto& g : v.guarantees) {
    if (g.source == Source::kLogSquare) {
      EXPECT_TRUE(g.satisfied || g.boundary_uncertain);
      if (g.boundary_uncertain) EXPECT_FALSE(g.satisfied);
    }
  }
}

TEST(Verdict, SoundAgainstSieve) {
  const Sieve sieve;
  const PiIndex idx(sieve, 100'000'000);
  std::mt19937_64 rng(99);
  int covered = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t m = 2 + rng() % 99'999'000;
    const std::uint64_t n = 2 + rng() % std::min<std::uint64_t>(m - 1, 100'000'000 - m);
    if (n > m) continue;
    // Judge the analytic guarantees alone; the scanned bound covers all of
    // this range anyway.
    const auto v = coverage_verdict(m, n);
    const bool analytic = std::any_of(v.guarantees.begin(), v.guarantees.end(), [](const Guarantee& g) {
      return g.satisfied && !g.rh_conditional && g.source != Source::kScanned;
    });
    if (!analytic) continue;
    ++covered;
    ASSERT_LE(idx.pi(m + n), idx.pi(m) + idx.pi(n)) << m << " " << n;
  }
  EXPECT_GT(covered, 100);
}

}  // namespace
}  // namespace hlc::regions
