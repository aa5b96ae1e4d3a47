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

#include <fstream>
#include <string>

#include <json.hpp>

#include "hlc/error.hpp"
#include "hlc/segal.hpp"

namespace hlc::segal {

using nlohmann::json;

std::string to_json_line(const ScanReport& report) {
  json cx = json::array();
  for (const auto& c : report.counterexamples) {
    cx.push_back({{"k", c.k}, {"q", c.q}, {"p_k", c.p_k}, {"p_k_minus_q", c.p_k_minus_q}, {"p_q_plus_1", c.p_q_plus_1}});
  }
  json j = {
      {"policy",
       {{"k_from", report.policy.k_from},
        {"k_to", report.policy.k_to},
        {"rule", std::string(rule_name(report.policy.rule))},
        {"checkpoint_every", report.policy.checkpoint_every}}},
      {"cursor", report.cursor},
      {"checked", report.checked},
      {"verified_prime", report.verified_prime},
      {"counterexamples", cx},
  };
  return j.dump();
}

ScanReport from_json_line(std::string_view line) {
  try {
    const json j = json::parse(line);
    ScanReport r;
    const auto& p = j.at("policy");
    r.policy.k_from = p.at("k_from").get<std::uint64_t>();
    r.policy.k_to = p.at("k_to").get<std::uint64_t>();
    r.policy.rule = parse_rule(p.at("rule").get<std::string>());
    r.policy.checkpoint_every = p.value("checkpoint_every", std::uint64_t{1'000'000});
    r.cursor = j.at("cursor").get<std::uint64_t>();
    r.checked = j.at("checked").get<std::uint64_t>();
    r.verified_prime = j.value("verified_prime", std::uint64_t{0});
    for (const auto& c : j.at("counterexamples")) {
      r.counterexamples.push_back({c.at("k").get<std::uint64_t>(), c.at("q").get<std::uint64_t>(),
                                   c.at("p_k").get<std::uint64_t>(), c.at("p_k_minus_q").get<std::uint64_t>(),
                                   c.at("p_q_plus_1").get<std::uint64_t>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw ResumeError(std::string("malformed checkpoint line: ") + e.what());
  }
}

void append_checkpoint(const std::filesystem::path& path, const ScanReport& report) {
  std::ofstream os(path, std::ios::app);
  if (!os) throw Error("cannot open checkpoint file " + path.string());
  os << to_json_line(report) << '\n';
  os.flush();
  if (!os) throw Error("cannot write checkpoint file " + path.string());
}

std::optional<ScanReport> read_last_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  std::string line;
  std::string last;
  while (std::getline(is, line)) {
    // A line cut short by an interrupted write has no closing brace; the
    // previous complete line is the valid checkpoint.
    if (!line.empty() && line.back() == '}') last = line;
  }
  if (last.empty()) return std::nullopt;
  return from_json_line(last);
}

}  // namespace hlc::segal
