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

#include "hlc/segal.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "hlc/error.hpp"
#include "hlc/simd/kernels.hpp"

namespace hlc::segal {
namespace {

constexpr std::size_t kBlockQ = 4096;

// Scans k in [k_lo, k_hi] into `out` (checked, counterexamples only).
class RangeScanner {
 public:
  RangeScanner(const PrimeTable& table, const PiIndex* small_pi, QRule rule, Strategy strategy)
      : table_(table), small_pi_(small_pi), rule_(rule), strategy_(strategy) {}

  void run(std::uint64_t k_lo, std::uint64_t k_hi, ScanReport& out) {
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
      const QRange qr = q_range(rule_, k);
      if (qr.size() == 0) continue;
      if (strategy_ == Strategy::kDominance) {
        dominance(k, qr, out);
      } else {
        exhaustive(k, qr, out);
      }
    }
  }

 private:
  void record(std::uint64_t k, std::uint64_t q, std::uint64_t pk, ScanReport& out) {
    out.counterexamples.push_back({k, q, pk, table_.nth(k - q), table_.nth(q + 1)});
  }

  void dominance(std::uint64_t k, QRange qr, ScanReport& out) {
    const std::uint64_t pk = table_.nth(k);
    std::uint64_t q = qr.lo;
    while (q <= qr.hi) {
      const std::uint64_t d = pk - table_.nth(k - q);
      if (d + 1 < table_.nth(q + 1)) {
        record(k, q, pk, out);
        ++out.checked;
        ++q;
        continue;
      }
      // p_{q'+1} <= d + 1 for every q' < pi(d + 1).
      const std::uint64_t reach =
          (small_pi_ != nullptr && d + 1 <= small_pi_->limit() ? small_pi_->pi(d + 1) : table_.count_leq(d + 1)) - 1;
      const std::uint64_t stop = std::min(reach, qr.hi);
      out.checked += stop - q + 1;
      q = stop + 1;
    }
  }

  void exhaustive(std::uint64_t k, QRange qr, ScanReport& out) {
    const std::uint64_t bound = table_.nth(k) + 1;
    for (std::uint64_t q1 = qr.lo; q1 <= qr.hi; q1 += kBlockQ) {
      const std::uint64_t q2 = std::min(qr.hi, q1 + kBlockQ - 1);
      const std::size_t n = static_cast<std::size_t>(q2 - q1 + 1);
      lhs_.resize(n);
      rhs_.resize(n);
      table_.decode(k - q2, lhs_);
      table_.decode(q1 + 1, rhs_);
      std::size_t i = 0;
      while ((i = simd::segal_first_violation(bound, lhs_, rhs_, i)) < n) {
        record(k, q1 + i, bound - 1, out);
        ++i;
      }
      out.checked += n;
    }
  }

  const PrimeTable& table_;
  const PiIndex* small_pi_;
  QRule rule_;
  Strategy strategy_;
  std::vector<std::uint64_t> lhs_;
  std::vector<std::uint64_t> rhs_;
};

// Splits [lo, hi] into at most `parts` contiguous pieces with roughly equal
// pair counts (work grows with k^2).
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_k(std::uint64_t lo, std::uint64_t hi, unsigned parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (parts <= 1 || hi - lo + 1 < 2 * static_cast<std::uint64_t>(parts)) {
    out.emplace_back(lo, hi);
    return out;
  }
  const long double a = static_cast<long double>(lo) * lo;
  const long double b = static_cast<long double>(hi + 1) * (hi + 1);
  std::uint64_t start = lo;
  for (unsigned i = 1; i <= parts && start <= hi; ++i) {
    std::uint64_t end = hi;
    if (i < parts) {
      const long double target = std::sqrt(a + (b - a) * i / parts);
      end = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(target), start, hi);
    }
    out.emplace_back(start, end);
    start = end + 1;
  }
  return out;
}

// Gaps d = p_k - p_{k-q} stay far below p_k (q <= k/2, and q <= k/27 under
// the Panaitopol rule), so an O(1) pi table over the likely range of d
// replaces most binary searches. Larger d fall back to the prime table.
constexpr std::uint64_t kSmallPiCap = std::uint64_t{4} << 30;

std::optional<PiIndex> small_pi_index(const ScanPolicy& policy, const PrimeTable& table) {
  const QRange qr = q_range(policy.rule, policy.k_to);
  if (qr.size() == 0) return std::nullopt;
  const std::uint64_t span = table.nth(policy.k_to) - table.nth(policy.k_to - qr.hi);
  const std::uint64_t limit = std::min({2 * span + 4096, table.limit(), kSmallPiCap});
  return PiIndex(table, limit);
}

void require_table(const PrimeTable& table, std::uint64_t k_to) {
  if (table.empty() || table.base_index() != 1 || table.last_index() < k_to) {
    throw CapacityError("prime table must cover p_1 .. p_" + std::to_string(k_to) + " (has " +
                        std::to_string(table.empty() ? 0 : table.last_index()) + " primes)");
  }
}

}  // namespace

std::string_view rule_name(QRule rule) { return rule == QRule::kFull ? "full" : "panaitopol"; }

QRule parse_rule(std::string_view name) {
  if (name == "full") return QRule::kFull;
  if (name == "panaitopol") return QRule::kPanaitopol;
  throw DomainError("unknown q rule '" + std::string(name) + "' (expected full or panaitopol)");
}

QRange q_range(QRule rule, std::uint64_t k) {
  if (k < 3) return {1, 0};
  if (rule == QRule::kFull) return {1, (k - 1) / 2};
  return {kPanaitopolMinQ, (k - 1) / 27};
}

void ScanPolicy::validate() const {
  if (k_from < 3) throw DomainError("k_from must be at least 3");
  if (k_to < k_from) throw DomainError("k_to must not be below k_from");
  if (rule == QRule::kPanaitopol && k_from < kPanaitopolMinK) {
    throw DomainError("the panaitopol rule requires k_from >= 9680");
  }
  if (checkpoint_every == 0) throw DomainError("checkpoint_every must be positive");
}

ScanReport merge(const ScanReport& first, const ScanReport& second) {
  if (first.policy.rule != second.policy.rule) throw DomainError("cannot merge reports with different rules");
  if (!first.complete() || first.policy.k_to + 1 != second.policy.k_from) {
    throw DomainError("reports are not adjacent");
  }
  ScanReport out;
  out.policy = first.policy;
  out.policy.k_to = second.policy.k_to;
  out.checked = first.checked + second.checked;
  out.counterexamples = first.counterexamples;
  out.counterexamples.insert(out.counterexamples.end(), second.counterexamples.begin(),
                             second.counterexamples.end());
  const bool progressed = second.cursor >= second.policy.k_from;
  out.cursor = progressed ? second.cursor : first.cursor;
  out.verified_prime = progressed ? second.verified_prime : first.verified_prime;
  return out;
}

bool segal_inequality(std::uint64_t k, std::uint64_t q, const PrimeTable& table) {
  if (k < 3) throw DomainError("k must be at least 3");
  if (q < 1 || q > (k - 1) / 2) {
    throw DomainError("q = " + std::to_string(q) + " outside 1..floor((k-1)/2) for k = " + std::to_string(k));
  }
  for (std::uint64_t idx : {k, k - q, q + 1}) {
    if (!table.covers_index(idx)) throw CapacityError("p_" + std::to_string(idx) + " is outside the prime table");
  }
  return table.nth(k) + 1 >= table.nth(k - q) + table.nth(q + 1);
}

ScanReport scan(const ScanPolicy& policy, const PrimeTable& table, const std::optional<ScanReport>& resume,
                const ScanOptions& options) {
  policy.validate();
  require_table(table, policy.k_to);
  if (options.shards == 0) throw DomainError("shards must be positive");

  ScanReport report;
  report.policy = policy;
  report.cursor = policy.k_from - 1;
  if (resume) {
    if (!resume->policy.compatible(policy)) {
      throw ResumeError("checkpoint policy (" + std::string(rule_name(resume->policy.rule)) + " " +
                        std::to_string(resume->policy.k_from) + ".." + std::to_string(resume->policy.k_to) +
                        ") does not match the requested scan");
    }
    if (resume->cursor + 1 < policy.k_from || resume->cursor > policy.k_to) {
      throw ResumeError("checkpoint cursor outside the scan range");
    }
    report.checked = resume->checked;
    report.counterexamples = resume->counterexamples;
    report.cursor = resume->cursor;
    report.verified_prime = resume->verified_prime;
  }

  std::optional<PiIndex> small_pi;
  if (options.strategy == Strategy::kDominance && report.cursor < policy.k_to) {
    small_pi = small_pi_index(policy, table);
  }

  std::uint64_t checkpoints = 0;
  while (report.cursor < policy.k_to) {
    // Checkpoints fall on multiples of checkpoint_every counted from k_from.
    const std::uint64_t done = report.cursor + 1 - policy.k_from;
    const std::uint64_t next_stop = (done / policy.checkpoint_every + 1) * policy.checkpoint_every;
    const std::uint64_t lo = report.cursor + 1;
    const std::uint64_t hi = std::min(policy.k_to, policy.k_from + next_stop - 1);

    const auto parts = split_k(lo, hi, options.shards);
    std::vector<ScanReport> partial(parts.size());
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex mu;
    auto work = [&](std::size_t i) {
      try {
        RangeScanner scanner(table, small_pi ? &*small_pi : nullptr, policy.rule, options.strategy);
        scanner.run(parts[i].first, parts[i].second, partial[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    };
    if (parts.size() == 1) {
      work(0);
    } else {
      for (std::size_t i = 0; i < parts.size(); ++i) threads.emplace_back(work, i);
      for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& p : partial) {
      report.checked += p.checked;
      report.counterexamples.insert(report.counterexamples.end(), p.counterexamples.begin(),
                                    p.counterexamples.end());
    }
    report.cursor = hi;
    report.verified_prime = table.nth(hi);

    if (options.checkpoint_path) append_checkpoint(*options.checkpoint_path, report);
    ++checkpoints;
    if (options.stop_after_checkpoints != 0 && checkpoints >= options.stop_after_checkpoints) break;
  }
  return report;
}

std::uint64_t verified_hlc_bound(std::span<const ScanReport> reports, const PrimeTable& table) {
  const Counterexample* smallest = nullptr;
  for (const auto& r : reports) {
    for (const auto& c : r.counterexamples) {
      if (smallest == nullptr || c.p_k < smallest->p_k) smallest = &c;
    }
  }
  if (smallest != nullptr) {
    throw RefutationError(smallest->p_k, "Segal's criterion fails at k = " + std::to_string(smallest->k) +
                                             ", q = " + std::to_string(smallest->q) + "; smallest failing p_k = " +
                                             std::to_string(smallest->p_k));
  }

  struct Interval {
    std::uint64_t from, to;
  };
  std::vector<Interval> intervals;
  for (const auto& r : reports) {
    if (r.cursor >= r.policy.k_from) intervals.push_back({r.policy.k_from, r.cursor});
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.from < b.from; });
  if (intervals.empty() || intervals.front().from != 3) {
    throw CoverageError("no verified report starts at k = 3");
  }
  std::uint64_t covered = 2;
  for (const auto& iv : intervals) {
    if (iv.from > covered + 1) {
      throw CoverageError("k values " + std::to_string(covered + 1) + ".." + std::to_string(iv.from - 1) +
                          " are not covered by any report");
    }
    covered = std::max(covered, iv.to);
  }
  return table.nth(covered);
}

std::uint64_t verified_hlc_bound(const ScanReport& report, const PrimeTable& table) {
  return verified_hlc_bound(std::span<const ScanReport>(&report, 1), table);
}

}  // namespace hlc::segal
