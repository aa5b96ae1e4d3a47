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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlc/sieve.hpp"

namespace hlc::segal {

// Which q values accompany each k.
//   kFull:        1 <= q <= floor((k-1)/2)
//   kPanaitopol: 34 <= q <= floor((k-1)/27), only for k >= 9680
enum class QRule { kFull, kPanaitopol };

inline constexpr std::uint64_t kPanaitopolMinK = 9680;
inline constexpr std::uint64_t kPanaitopolMinQ = 34;

std::string_view rule_name(QRule rule);
QRule parse_rule(std::string_view name);

struct QRange {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;  // empty when hi < lo
  std::uint64_t size() const { return hi >= lo ? hi - lo + 1 : 0; }
};

QRange q_range(QRule rule, std::uint64_t k);

struct ScanPolicy {
  std::uint64_t k_from = 3;
  std::uint64_t k_to = 3;
  QRule rule = QRule::kFull;
  std::uint64_t checkpoint_every = 1'000'000;

  void validate() const;
  // Same k range and rule; checkpoint spacing may differ.
  bool compatible(const ScanPolicy& other) const {
    return k_from == other.k_from && k_to == other.k_to && rule == other.rule;
  }
  friend bool operator==(const ScanPolicy&, const ScanPolicy&) = default;
};

struct Counterexample {
  std::uint64_t k = 0;
  std::uint64_t q = 0;
  std::uint64_t p_k = 0;
  std::uint64_t p_k_minus_q = 0;
  std::uint64_t p_q_plus_1 = 0;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct ScanReport {
  ScanPolicy policy;
  // (k, q) pairs verified so far, whether tested one by one or covered by a
  // dominance step.
  std::uint64_t checked = 0;
  std::vector<Counterexample> counterexamples;
  // Last k for which every q was verified; k_from - 1 before any progress.
  std::uint64_t cursor = 0;
  // p_cursor, or 0 before any progress.
  std::uint64_t verified_prime = 0;

  bool complete() const { return cursor == policy.k_to; }
  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

// Concatenates reports over adjacent k ranges with the same rule. The first
// report must be complete and end right before the second one starts.
ScanReport merge(const ScanReport& first, const ScanReport& second);

enum class Strategy {
  // Every pair goes through the SIMD block kernel.
  kExhaustive,
  // After testing q, every q' >= q with p_{q'+1} <= p_k - p_{k-q} + 1 holds as
  // well (the left side only grows with q), so the scan jumps to
  // q' = pi(p_k - p_{k-q} + 1). Failing pairs are still reported one by one.
  kDominance,
};

struct ScanOptions {
  unsigned shards = 1;
  Strategy strategy = Strategy::kDominance;
  // Appends one JSON line per checkpoint when set.
  std::optional<std::filesystem::path> checkpoint_path;
  // Stops after writing this many checkpoints (0 = run to the end); the
  // returned report is then partial. Used to exercise resumption.
  std::uint64_t stop_after_checkpoints = 0;
};

// p_k >= p_{k-q} + p_{q+1} - 1.
bool segal_inequality(std::uint64_t k, std::uint64_t q, const PrimeTable& table);

ScanReport scan(const ScanPolicy& policy, const PrimeTable& table,
                const std::optional<ScanReport>& resume = std::nullopt, const ScanOptions& options = {});

// The bound M such that the conjecture holds for all m, n >= 2 with
// m + n <= M: p_K for the largest K such that the reports cover every k in
// [3, K] (k < 9680 under the full rule; the Panaitopol rule may take over from
// 9680 on). Throws RefutationError when any report has counterexamples and
// CoverageError when the reports do not form a contiguous prefix from k = 3.
std::uint64_t verified_hlc_bound(std::span<const ScanReport> reports, const PrimeTable& table);
std::uint64_t verified_hlc_bound(const ScanReport& report, const PrimeTable& table);

// Checkpoint lines: {"policy":{...},"cursor":..,"checked":..,"verified_prime":..,"counterexamples":[...]}
std::string to_json_line(const ScanReport& report);
ScanReport from_json_line(std::string_view line);
void append_checkpoint(const std::filesystem::path& path, const ScanReport& report);
// The report on the last non-empty line, if the file exists and has one.
std::optional<ScanReport> read_last_checkpoint(const std::filesystem::path& path);

}  // namespace hlc::segal
