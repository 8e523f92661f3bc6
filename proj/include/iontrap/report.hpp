// Copyright 2026 The iontrap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "iontrap/charge_corrections.hpp"
#include "iontrap/config.hpp"
#include "iontrap/dynamics.hpp"

namespace iontrap {

// Order of magnitude quoted for each hierarchy scale, in 2 pi x Hz.
double hierarchy_paper_order(const std::string& name);

// Order quoted for the blackbody heating rate [1/s].
inline constexpr double kBlackbodyPaperOrder = 1e-7;

nlohmann::json ledger_to_json(const CorrectionLedger& ledger);

DrivenOscillatorSpec driven_spec(const Config& config, const TrapSetup& setup);

// Everything `trap report` emits, keyed deterministically. Depends only on config.source.
nlohmann::json build_report(const Config& config);

std::string report_json_text(const nlohmann::json& report);

// Aligned plain-text tables; `digits` significant digits for floats.
std::string render_report_text(const nlohmann::json& report, int digits);

// TRAP_FLOAT_DIGITS, clamped to [1, 17]; 9 when unset or unparsable.
int float_digits_from_env();

struct SimulationOutcome {
    TrajectoryRecord record;
    int component;
    double frequency;  // rad/s, dominant oscillation
    std::optional<double> fitted_amplitude;
    std::optional<double> analytic_amplitude;
};

// Requires config.simulate.
SimulationOutcome run_simulation(const Config& config);

std::string simulation_summary(const SimulationOutcome& outcome);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace iontrap
