// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cct {

/// One claim a scenario checked, with what it wanted and what it saw.
struct ScenarioStep {
  std::string description;
  bool ok = false;
  std::string expected;
  std::string observed;
};

struct ScenarioResult {
  std::string name;
  bool ok = false;
  std::vector<ScenarioStep> steps;
};

/// Names of the built-in scenarios, in a stable order.
std::vector<std::string> scenario_names();

/// Runs one built-in scenario end to end: a real HTTP log service on a
/// loopback port, actors talking to it through the HTTP client, monitors
/// gossiping, auditors judging. `now` anchors all timestamps, `seed` all
/// keys, so runs are reproducible. Throws std::invalid_argument for an
/// unknown name.
ScenarioResult run_scenario(std::string_view name, std::int64_t now = 1755400000,
                            std::uint64_t seed = 7);

std::string scenario_result_to_json(const ScenarioResult& result);

}  // namespace cct
