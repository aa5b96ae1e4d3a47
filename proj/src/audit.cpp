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

#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "hlc/bounds.hpp"
#include "hlc/error.hpp"

namespace hlc::bounds {
namespace {

bool has_side(const BoundSpec& spec, Direction side) {
  return spec.direction == Direction::kBoth || spec.direction == side;
}

// Accumulates checks for one contiguous stretch of the audit range.
class Checker {
 public:
  Checker(const BoundSpec& spec, const std::function<void(const AuditPoint&)>* sink)
      : spec_(spec), sink_(sink), lower_(has_side(spec, Direction::kLower)), upper_(has_side(spec, Direction::kUpper)) {}

  void check(std::uint64_t x, std::uint64_t pi_x, Direction side) {
    AuditPoint p;
    p.x = x;
    p.pi_x = pi_x;
    p.side = side;
    p.bound_x = evaluate(spec_, static_cast<Real>(x), side);
    const Real pi = static_cast<Real>(pi_x);
    p.violated = side == Direction::kLower ? p.bound_x > pi : p.bound_x < pi;
    ++points_;
    if (p.violated) violations_.push_back(p);
    if (sink_ && *sink_) (*sink_)(p);
  }

  // Prime p > lo was reached; `count` = pi(p).
  void on_prime(std::uint64_t p, std::uint64_t count) {
    if (lower_) check(p - 1, count - 1, Direction::kLower);
    if (upper_) check(p, count, Direction::kUpper);
  }

  void at_lo(std::uint64_t lo, std::uint64_t pi_lo) {
    if (upper_) check(lo, pi_lo, Direction::kUpper);
  }

  void at_hi(std::uint64_t hi, std::uint64_t pi_hi) {
    if (lower_) check(hi, pi_hi, Direction::kLower);
  }

  std::uint64_t points() const { return points_; }
  std::vector<AuditPoint>& violations() { return violations_; }

 private:
  const BoundSpec& spec_;
  const std::function<void(const AuditPoint&)>* sink_;
  bool lower_;
  bool upper_;
  std::uint64_t points_ = 0;
  std::vector<AuditPoint> violations_;
};

void check_audit_range(const BoundSpec& spec, std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw EmptyRangeError("audit range is empty");
  if (static_cast<Real>(lo) < spec.valid_from) {
    throw ValidityError(spec.id + ": audit must start at or above valid_from");
  }
  if (spec.valid_to && static_cast<Real>(hi) > *spec.valid_to) {
    throw ValidityError(spec.id + ": audit extends beyond valid_to");
  }
}

}  // namespace

AuditResult audit(const BoundSpec& spec, std::uint64_t lo, std::uint64_t hi, const Sieve& sieve,
                  const AuditOptions& options) {
  check_audit_range(spec, lo, hi);
  if (hi > sieve.config().max_limit) throw CapacityError("audit range exceeds the sieve limit");
  if (options.shards == 0) throw DomainError("shards must be positive");

  AuditResult result;
  result.spec_id = spec.id;
  result.lo = lo;
  result.hi = hi;

  const std::uint64_t pi_lo = sieve.pi(lo);
  const auto* sink = options.sink ? &options.sink : nullptr;
  const unsigned shards = sink ? 1 : options.shards;

  // Shards partition the primes in (lo, hi].
  std::vector<std::pair<std::uint64_t, std::uint64_t>> parts;
  if (hi > lo) {
    const std::uint64_t span = hi - lo;
    const std::uint64_t step = (span + shards - 1) / shards;
    for (std::uint64_t s = lo + 1; s <= hi; s += step) {
      parts.emplace_back(s, std::min(hi, s + step - 1));
      if (hi - s < step) break;
    }
  }
  std::vector<std::uint64_t> before(parts.size(), pi_lo);
  if (parts.size() > 1) {
    std::vector<std::uint64_t> counts(parts.size());
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      threads.emplace_back([&, i] { counts[i] = sieve.count_range(parts[i].first, parts[i].second); });
    }
    for (auto& t : threads) t.join();
    for (std::size_t i = 1; i < parts.size(); ++i) before[i] = before[i - 1] + counts[i - 1];
  }

  std::vector<Checker> checkers;
  checkers.reserve(parts.size() + 1);
  for (std::size_t i = 0; i <= parts.size(); ++i) checkers.emplace_back(spec, sink);
  std::vector<std::uint64_t> after(parts.size(), 0);

  checkers[0].at_lo(lo, pi_lo);
  auto walk = [&](std::size_t i) {
    std::uint64_t count = before[i];
    sieve.for_each_segment(parts[i].first, parts[i].second, [&](const SegmentView& v) {
      v.for_each_prime([&](std::uint64_t p) { checkers[i + 1].on_prime(p, ++count); });
      return true;
    });
    after[i] = count;
  };
  if (parts.size() <= 1 || shards == 1) {
    for (std::size_t i = 0; i < parts.size(); ++i) walk(i);
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex mu;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          walk(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  const std::uint64_t pi_hi = parts.empty() ? pi_lo : after.back();
  Checker tail(spec, sink);
  tail.at_hi(hi, pi_hi);

  for (auto& c : checkers) {
    result.points_checked += c.points();
    result.violations.insert(result.violations.end(), c.violations().begin(), c.violations().end());
  }
  result.points_checked += tail.points();
  result.violations.insert(result.violations.end(), tail.violations().begin(), tail.violations().end());
  return result;
}

AuditResult audit(const BoundSpec& spec, std::uint64_t lo, std::uint64_t hi, const PrimeTable& table) {
  check_audit_range(spec, lo, hi);
  if (table.base_index() != 1 || table.limit() < hi) throw CapacityError("prime table does not cover the audit range");
  AuditResult result;
  result.spec_id = spec.id;
  result.lo = lo;
  result.hi = hi;
  Checker checker(spec, nullptr);
  std::uint64_t count = table.count_leq(lo);
  checker.at_lo(lo, count);
  std::vector<std::uint64_t> buf(4096);
  bool done = false;
  while (!done && count < table.last_index()) {
    const std::uint64_t n = std::min<std::uint64_t>(buf.size(), table.last_index() - count);
    table.decode(count + 1, std::span<std::uint64_t>(buf.data(), n));
    for (std::uint64_t i = 0; i < n; ++i) {
      if (buf[i] > hi) {
        done = true;
        break;
      }
      checker.on_prime(buf[i], ++count);
    }
  }
  checker.at_hi(hi, count);
  result.points_checked = checker.points();
  result.violations = std::move(checker.violations());
  return result;
}

}  // namespace hlc::bounds
