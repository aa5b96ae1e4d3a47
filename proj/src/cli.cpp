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

#include "hlc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlc/bounds.hpp"
#include "hlc/error.hpp"
#include "hlc/logint.hpp"
#include "hlc/numeric.hpp"
#include "hlc/regions.hpp"
#include "hlc/rho_star.hpp"
#include "hlc/segal.hpp"
#include "hlc/sieve.hpp"

namespace hlc::cli {
namespace {

using nlohmann::ordered_json;

enum class Format { kDefault, kCsv, kJsonl, kPlain };

// Options shared by every subcommand.
struct CommandConfig {
  std::string format = "default";
  unsigned shards = 1;
  std::optional<unsigned> shard_index;
  std::string budget = "40_000_000_000";
  std::size_t segment_bytes = 256 * 1024;

  Format parsed_format() const {
    if (format == "default") return Format::kDefault;
    if (format == "csv") return Format::kCsv;
    if (format == "jsonl") return Format::kJsonl;
    if (format == "plain") return Format::kPlain;
    throw DomainError("unknown format '" + format + "' (csv, jsonl or plain)");
  }

  std::uint64_t budget_value() const { return parse_u64(budget); }

  void validate() const {
    if (shards == 0) throw DomainError("--shards must be positive");
    if (shard_index && *shard_index >= shards) throw DomainError("--shard-index must be below --shards");
    parsed_format();
    const std::uint64_t b = budget_value();
    if (b > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError("--budget must not exceed 2^63 - 1");
  }

  Sieve sieve() const {
    SieveConfig c;
    c.segment_bytes = segment_bytes;
    c.max_limit = budget_value();
    c.shards = shards;
    return Sieve(c);
  }
};

std::string fmt_real(Real v, int digits = 19) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*Lg", digits, v);
  return buf;
}

void emit_scalar(std::ostream& out, Format f, const ordered_json& json, const std::string& plain) {
  if (f == Format::kJsonl) {
    out << json.dump() << '\n';
  } else if (f == Format::kCsv) {
    std::string header;
    std::string row;
    for (auto it = json.begin(); it != json.end(); ++it) {
      header += (header.empty() ? "" : ",") + it.key();
      row += (row.empty() ? "" : ",") + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    out << header << '\n' << row << '\n';
  } else {
    out << plain << '\n';
  }
}

struct SegalArgs {
  std::string from = "3";
  std::string to = "3";
  std::string rule = "full";
  std::optional<std::string> checkpoint;
  std::string every = "1_000_000";
  std::string strategy = "dominance";
  std::uint64_t stop_after = 0;
};

int cmd_segal_scan(const CommandConfig& cfg, const SegalArgs& a, std::ostream& out) {
  segal::ScanPolicy policy;
  policy.k_from = parse_u64(a.from);
  policy.k_to = parse_u64(a.to);
  policy.rule = segal::parse_rule(a.rule);
  policy.checkpoint_every = parse_u64(a.every);
  policy.validate();

  segal::ScanOptions opts;
  opts.shards = cfg.shards;
  if (a.strategy == "dominance") {
    opts.strategy = segal::Strategy::kDominance;
  } else if (a.strategy == "exhaustive") {
    opts.strategy = segal::Strategy::kExhaustive;
  } else {
    throw DomainError("unknown strategy '" + a.strategy + "' (dominance or exhaustive)");
  }
  opts.stop_after_checkpoints = a.stop_after;

  // --shard-index selects one contiguous slice of the k range; slices are
  // merged afterwards with the report's merge rule.
  if (cfg.shard_index) {
    const std::uint64_t span = policy.k_to - policy.k_from + 1;
    const std::uint64_t lo = policy.k_from + span * *cfg.shard_index / cfg.shards;
    const std::uint64_t hi = policy.k_from + span * (*cfg.shard_index + 1) / cfg.shards - 1;
    if (hi < lo) throw DomainError("shard slice is empty");
    policy.k_from = lo;
    policy.k_to = hi;
    opts.shards = 1;
    if (policy.rule == segal::QRule::kPanaitopol) policy.validate();
  }

  std::optional<segal::ScanReport> resume;
  if (a.checkpoint) {
    opts.checkpoint_path = *a.checkpoint;
    resume = segal::read_last_checkpoint(*a.checkpoint);
  }

  const Sieve sieve = cfg.sieve();
  const PrimeTable table = cached_first_primes(sieve, policy.k_to);
  segal::ScanReport report = (resume && resume->complete() && resume->policy.compatible(policy))
                                 ? *resume
                                 : segal::scan(policy, table, resume, opts);

  const Format f = cfg.parsed_format();
  if (f == Format::kPlain) {
    out << "rule=" << segal::rule_name(report.policy.rule) << " k=" << report.policy.k_from << ".."
        << report.policy.k_to << " cursor=" << report.cursor << " checked=" << report.checked
        << " counterexamples=" << report.counterexamples.size() << " verified_prime=" << report.verified_prime
        << '\n';
  } else {
    out << segal::to_json_line(report) << '\n';
  }
  return report.counterexamples.empty() ? kExitOk : kExitFindings;
}

int cmd_audit(const CommandConfig& cfg, const std::string& spec_id, const std::string& from,
              const std::optional<std::string>& to, bool all_points, const std::string& three_term_from,
              std::ostream& out) {
  const auto specs = bounds::registry(parse_real(three_term_from));
  const auto& spec = bounds::find(specs, spec_id);
  const std::uint64_t lo = from.empty() ? ceil_to_u64(spec.valid_from) : parse_u64(from);
  if (!to) throw DomainError("bounds audit needs --to");
  const std::uint64_t hi = parse_u64(*to);
  const Sieve sieve = cfg.sieve();
  const Format f = cfg.parsed_format();

  auto write = [&](const bounds::AuditPoint& p) {
    if (f == Format::kJsonl) {
      ordered_json j;
      j["spec_id"] = spec.id;
      j["x"] = p.x;
      j["pi_x"] = p.pi_x;
      j["bound_x"] = fmt_real(p.bound_x, 21);
      j["direction"] = std::string(bounds::direction_name(p.side));
      j["violated"] = p.violated;
      out << j.dump() << '\n';
    } else {
      out << bounds::csv_row(spec.id, p) << '\n';
    }
  };
  if (f != Format::kJsonl) out << bounds::csv_header() << '\n';

  bounds::AuditOptions opts;
  opts.shards = cfg.shards;
  if (all_points) opts.sink = write;
  const bounds::AuditResult result = bounds::audit(spec, lo, hi, sieve, opts);
  if (!all_points) {
    for (const auto& v : result.violations) write(v);
  }
  std::cerr << "audit " << spec.id << " [" << lo << ", " << hi << "]: " << result.points_checked
            << " points, " << result.violations.size() << " violations"
            << (spec.conditional == bounds::Condition::kRiemannHypothesis ? " (empirical, conditional on RH)" : "")
            << '\n';
  return result.violations.empty() ? kExitOk : kExitFindings;
}

int cmd_region_check(const CommandConfig& cfg, const std::string& m_text, const std::string& n_text,
                     std::ostream& out) {
  Wide m = parse_wide(m_text);
  Wide n = parse_wide(n_text);
  if (m < n) std::swap(m, n);
  regions::DirectCheck direct;
  const std::uint64_t budget = cfg.budget_value();
  std::optional<Sieve> sieve;
  if (m + n <= budget) {
    sieve.emplace(cfg.sieve());
    direct.budget = budget;
    direct.pi = [&](std::uint64_t x) { return sieve->pi(x); };
  }
  const auto verdict = regions::coverage_verdict(m, n, direct);
  const Format f = cfg.parsed_format();
  if (f == Format::kPlain) {
    out << "m=" << to_string(verdict.m) << " n=" << to_string(verdict.n);
    for (const auto& g : verdict.guarantees) {
      out << ' ' << regions::source_name(g.source) << '=' << (g.satisfied ? "yes" : (g.boundary_uncertain ? "boundary" : "no"));
    }
    out << " unconditional=" << (verdict.covered_unconditionally ? "yes" : "no")
        << " under_rh=" << (verdict.covered_under_rh ? "yes" : "no") << '\n';
  } else {
    out << regions::to_json(verdict) << '\n';
  }
  return kExitOk;
}

int cmd_x0_table(const CommandConfig& cfg, std::ostream& out) {
  const Format f = cfg.parsed_format();
  const auto rows = regions::reference_chain();
  if (f != Format::kJsonl) out << regions::x0_csv_header() << '\n';
  for (const auto& row : rows) {
    const regions::RegionParams p{regions::kReferenceb, regions::kReferenceB, row.row.r, row.row.s};
    const auto t = regions::x0_terms(p);
    if (f == Format::kJsonl) {
      ordered_json j;
      j["r"] = fmt_real(p.r, 10);
      j["s"] = fmt_real(p.s, 10);
      j["exp_term"] = fmt_real(t.exp_term, 21);
      j["sieve_term"] = fmt_real(t.sieve_term, 21);
      j["B_term"] = fmt_real(t.b_term, 21);
      j["x0"] = t.x0;
      out << j.dump() << '\n';
    } else {
      out << regions::x0_csv_row(p, t) << '\n';
    }
  }
  std::vector<regions::ChainRow> chain;
  for (const auto& row : rows) chain.push_back(row.row);
  const bool ok = regions::verify_chain(chain, regions::kReferenceb, regions::kReferenceB, 109, regions::kReferenceCap);
  std::cerr << "chain 1950 -> 109 with cap " << regions::kReferenceCap << ": " << (ok ? "verified" : "FAILED") << '\n';
  return ok ? kExitOk : kExitFindings;
}

int cmd_rho_star(const CommandConfig& cfg, const std::string& m_text, bool exact, const std::string& cap,
                 std::ostream& out) {
  const std::uint64_t m = parse_u64(m_text);
  const auto r = exact ? rho_star::rho_star_exact(m, cfg.shards) : rho_star::rho_star_greedy(m, parse_u64(cap));
  const Format f = cfg.parsed_format();
  if (f == Format::kJsonl) {
    ordered_json j;
    j["m"] = r.m;
    j["value"] = r.value;
    j["exact"] = r.exact;
    j["witness_shift"] = r.witness_shift.get_str();
    j["pi_m"] = r.pi_m;
    j["gap"] = r.gap();
    out << j.dump() << '\n';
  } else if (f == Format::kPlain) {
    out << r.value << '\n';
  } else {
    out << rho_star::csv_header() << '\n' << rho_star::csv_row(r) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification toolkit for pi(m+n) <= pi(m) + pi(n)", argv.empty() ? "hlc" : argv[0]};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");
  app.fallthrough();  // global options may follow the subcommand

  CommandConfig cfg;
  app.add_option("--format", cfg.format, "csv | jsonl | plain (default depends on the command)");
  app.add_option("--shards", cfg.shards, "worker threads, or slice count with --shard-index");
  app.add_option("--shard-index", cfg.shard_index, "process only this slice (segal scan)");
  app.add_option("--budget", cfg.budget, "largest integer the sieve may reach");
  app.add_option("--segment-bytes", cfg.segment_bytes, "sieve segment size");

  std::string x_text;
  auto* pi_cmd = app.add_subcommand("pi", "count primes <= X");
  pi_cmd->add_option("X", x_text)->required();

  std::string k_text;
  auto* nth_cmd = app.add_subcommand("nth-prime", "the K-th prime");
  nth_cmd->add_option("K", k_text)->required();

  std::string lo_text, hi_text;
  auto* primes_cmd = app.add_subcommand("primes", "list primes in [LO, HI]");
  primes_cmd->add_option("LO", lo_text)->required();
  primes_cmd->add_option("HI", hi_text)->required();

  auto* segal_cmd = app.add_subcommand("segal", "Segal criterion");
  segal_cmd->require_subcommand(1);
  SegalArgs sa;
  auto* scan_cmd = segal_cmd->add_subcommand("scan", "scan a k range");
  scan_cmd->add_option("--from", sa.from)->required();
  scan_cmd->add_option("--to", sa.to)->required();
  scan_cmd->add_option("--rule", sa.rule, "full | panaitopol");
  scan_cmd->add_option("--checkpoint", sa.checkpoint, "JSONL checkpoint file (resumes from its last line)");
  scan_cmd->add_option("--checkpoint-every", sa.every);
  scan_cmd->add_option("--strategy", sa.strategy, "dominance | exhaustive");
  scan_cmd->add_option("--stop-after", sa.stop_after, "stop after N checkpoints");

  auto* bounds_cmd = app.add_subcommand("bounds", "explicit pi(x) bounds");
  bounds_cmd->require_subcommand(1);
  std::string spec_id, audit_from, three_term_from = "38284442297";
  std::optional<std::string> audit_to;
  bool all_points = false;
  auto* audit_cmd = bounds_cmd->add_subcommand("audit", "audit a bound against exact counts");
  audit_cmd->add_option("SPEC", spec_id)->required();
  audit_cmd->add_option("--from", audit_from, "default: the spec's valid_from");
  audit_cmd->add_option("--to", audit_to)->required();
  audit_cmd->add_flag("--all-points", all_points, "emit every checked point, not only violations");
  audit_cmd->add_option("--three-term-from", three_term_from, "validity threshold for axler_3term_upper");
  std::string li_text;
  auto* li_cmd = bounds_cmd->add_subcommand("li", "logarithmic integral");
  li_cmd->add_option("X", li_text)->required();
  auto* list_cmd = bounds_cmd->add_subcommand("list", "list the built-in bounds");

  auto* region_cmd = app.add_subcommand("region", "coverage theorems");
  region_cmd->require_subcommand(1);
  std::string m_text, n_text;
  auto* check_cmd = region_cmd->add_subcommand("check", "which theorems cover (M, N)");
  check_cmd->add_option("M", m_text)->required();
  check_cmd->add_option("N", n_text)->required();
  auto* x0_cmd = region_cmd->add_subcommand("x0-table", "threshold table for the 1950 -> 109 chain");

  std::string rho_m, rho_cap = "100000";
  bool rho_exact = false;
  auto* rho_cmd = app.add_subcommand("rho-star", "rho*(M)");
  rho_cmd->add_option("M", rho_m)->required();
  rho_cmd->add_flag("--exact", rho_exact, "exhaustive search (M <= 20)");
  rho_cmd->add_option("--cap", rho_cap, "largest M for the greedy bound");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    cfg.validate();
    const Format f = cfg.parsed_format();
    if (*pi_cmd) {
      const std::uint64_t x = parse_u64(x_text);
      const std::uint64_t v = cfg.sieve().pi(x);
      emit_scalar(out, f, ordered_json{{"x", x}, {"pi", v}}, std::to_string(v));
    } else if (*nth_cmd) {
      const std::uint64_t k = parse_u64(k_text);
      const std::uint64_t v = cfg.sieve().nth_prime(k);
      emit_scalar(out, f, ordered_json{{"k", k}, {"p_k", v}}, std::to_string(v));
    } else if (*primes_cmd) {
      const auto ps = cfg.sieve().primes_in_range(parse_u64(lo_text), parse_u64(hi_text));
      if (f == Format::kJsonl) {
        out << ordered_json{{"lo", parse_u64(lo_text)}, {"hi", parse_u64(hi_text)}, {"primes", ps}}.dump() << '\n';
      } else {
        if (f == Format::kCsv) out << "p\n";
        for (auto p : ps) out << p << '\n';
      }
    } else if (*segal_cmd && *scan_cmd) {
      return cmd_segal_scan(cfg, sa, out);
    } else if (*bounds_cmd && *audit_cmd) {
      return cmd_audit(cfg, spec_id, audit_from, audit_to, all_points, three_term_from, out);
    } else if (*bounds_cmd && *li_cmd) {
      const Real x = parse_real(li_text);
      const Real v = li(x);
      emit_scalar(out, f, ordered_json{{"x", fmt_real(x)}, {"li", fmt_real(v, 21)}}, fmt_real(v, 21));
    } else if (*bounds_cmd && *list_cmd) {
      for (const auto& s : bounds::registry(parse_real(three_term_from))) {
        ordered_json j;
        j["id"] = s.id;
        j["direction"] = std::string(bounds::direction_name(s.direction));
        j["valid_from"] = fmt_real(s.valid_from, 21);
        j["valid_to"] = s.valid_to ? ordered_json(fmt_real(*s.valid_to)) : ordered_json(nullptr);
        j["conditional"] = s.conditional == bounds::Condition::kRiemannHypothesis ? "RH" : "NONE";
        j["desk_auditable"] = s.desk_auditable;
        j["provenance"] = s.provenance;
        out << j.dump() << '\n';
      }
    } else if (*region_cmd && *check_cmd) {
      return cmd_region_check(cfg, m_text, n_text, out);
    } else if (*region_cmd && *x0_cmd) {
      return cmd_x0_table(cfg, out);
    } else if (*rho_cmd) {
      return cmd_rho_star(cfg, rho_m, rho_exact, rho_cap, out);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace hlc::cli
