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
#include <vector>

#include "iontrap/model.hpp"

namespace iontrap {

// q_eff = |q_e| + (m_e / M) Q.
double effective_charge(const IonSpecies& ion);

struct MonopoleDrive {
    double drive_energy;  // (Q A_L)^2 / (2M) at the focus [J]
    double ratio_to_depth;
    double equivalent_temperature;  // [K]
};

MonopoleDrive monopole_drive(const TrapSetup& setup);

struct MultipoleRatios {
    double kr;
    double quadrupole_amplitude;  // (kr) Omega / omega_L
    double octupole_ratio;        // (kr)^2
    double p_dot_a_ratio;         // P/(Mc) * Gamma/|delta|
};

// The characteristic momentum defaults to sqrt(2 M U0); a user value is capped by it.
MultipoleRatios multipole_ratios(const TrapSetup& setup,
                                 std::optional<double> characteristic_momentum = std::nullopt);

struct RelativisticRatios {
    double spin_flip_probability;
    double spin_orbit_ratio;
    double quadratic_field_shift;  // rad/s
};

RelativisticRatios relativistic_ratios(const TrapSetup& setup);

struct CorrectionEntry {
    std::string name;
    std::string formula;
    double value;  // natural quantity; unit implied by the name
    std::optional<double> absolute_energy;  // J
    double ratio_to_depth;
    double paper_order;  // same unit as value
    std::string section;
    bool table_row;         // one of the four headline corrections
    bool charge_dependent;  // vanishes for Q = 0

    // True when value and paper_order differ by more than one decade.
    bool outside_decade() const;
    // True when the leading powers of ten differ (2.3e-5 against 1e-4).
    bool decade_differs() const;
};

struct CorrectionLedger {
    std::vector<CorrectionEntry> entries;

    const CorrectionEntry& at(const std::string& name) const;
    // Headline rows sorted by descending ratio.
    std::vector<CorrectionEntry> table_rows_by_ratio() const;
};

struct BlackbodyOptions {
    double prefactor_multiplier = 1.0;
};

CorrectionLedger corrections_table(const TrapSetup& setup, const BlackbodyOptions& blackbody = {});

std::string ledger_to_csv(const CorrectionLedger& ledger);

}  // namespace iontrap
