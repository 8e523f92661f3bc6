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

#include <array>
#include <optional>
#include <string>

#include <json.hpp>

#include "iontrap/dipole_trap.hpp"
#include "iontrap/mathieu_floquet.hpp"
#include "iontrap/model.hpp"

namespace iontrap {

// Values in the units written in the config file.
struct SimulateConfig {
    enum class Mode { full, driven };

    Mode mode = Mode::full;
    std::array<double, 3> position_um{};
    std::array<double, 3> velocity_m_per_s{};
    double t_end_ms = 0.0;

    // full mode
    double rel_tol = 1e-10;
    double abs_tol_m = 1e-16;
    std::size_t samples = 2000;
    bool radiation_pressure = true;
    PotentialModel potential = PotentialModel::exact_log;

    // driven mode
    std::optional<double> omega0_2pi_kHz;   // defaults to the trap's omega0
    double drive_ratio = 1e3;
    std::optional<double> field_V_per_m;    // defaults to E_L at the focus
    int steps_per_drive_period = 64;
    std::size_t driven_samples = 0;
};

struct ScanConfig {
    ScanRange a;
    ScanRange q;
};

struct Config {
    double mass_u;
    double charge_e;
    double wavelength_nm;
    double linewidth_2pi_MHz;
    double waist_um;
    double detuning_2pi_GHz;
    std::optional<double> power_mW;
    std::optional<double> depth_mK;
    std::array<double, 3> curvatures_2pi_kHz_squared{};
    double temperature_K;
    double prefactor_multiplier = 1.0;
    std::optional<SimulateConfig> simulate;
    std::optional<ScanConfig> scan;

    nlohmann::json source;  // the document as read
};

// Throws ConfigError naming the offending key.
Config parse_config(const nlohmann::json& document);
Config load_config(const std::string& path);

TrapSetup build_setup(const Config& config);

}  // namespace iontrap
