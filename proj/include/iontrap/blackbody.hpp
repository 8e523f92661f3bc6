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

#include "iontrap/model.hpp"

namespace iontrap {

// Bose occupation 1 / (exp(hbar w / kB T) - 1); zero at T = 0.
double mean_occupation(double omega0, double temperature);

// Dipole emission rate of a charge Q oscillating at omega0:
// Q^2 omega0^2 / (6 pi eps0 M c^3), times the configurable multiplier.
double larmor_rate(double charge, double mass, double omega0, double prefactor_multiplier = 1.0);

struct HeatingEstimate {
    double mean_occupation;
    double larmor_rate;       // 1/s
    double heating_rate;      // Gamma' [1/s]
    double heating_timescale; // 1/Gamma' [s], +inf when Gamma' = 0
    double motional_temperature;  // hbar omega0 / kB [K]
    bool neutral;             // Q = 0, no coupling to the thermal field
    bool outside_recommended_range;  // omega0 outside 2 pi x [10 kHz, 1 MHz]
};

HeatingEstimate heating_rate(const TrapSetup& setup, double omega0, double prefactor_multiplier = 1.0);

}  // namespace iontrap
