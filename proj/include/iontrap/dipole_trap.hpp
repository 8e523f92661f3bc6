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
#include <string>
#include <vector>

#include "iontrap/model.hpp"

namespace iontrap {

enum class PotentialModel {
    low_saturation,  // V = (hbar delta / 2) s
    exact_log,       // V = (hbar delta / 2) ln(1 + s), the antiderivative of the dipolar force
};

// s = kappa * I, with kappa = d_eff^2 / (eps0 c hbar^2 (delta^2 + Gamma^2/4)).
double saturation_per_intensity(const TrapSetup& setup);

double saturation_at(const TrapSetup& setup, const Vec3& position);

double effective_potential_at(const TrapSetup& setup, const Vec3& position,
                              PotentialModel model = PotentialModel::low_saturation);

// -grad V for the chosen potential model, computed from the analytic intensity gradient.
Vec3 dipolar_force_at(const TrapSetup& setup, const Vec3& position,
                      PotentialModel model = PotentialModel::exact_log);

struct MeanForce {
    Vec3 dipolar;
    Vec3 radiation_pressure;

    Vec3 total() const { return dipolar + radiation_pressure; }
};

// Cycle-averaged force on the center of mass:
//   F = -(hbar delta/2) grad ln(1+s) + (hbar Gamma/2) s/(1+s) k_L.
MeanForce mean_force_at(const TrapSetup& setup, const Vec3& position);

struct ScatteringRate {
    double rate;                   // 1/s
    bool beyond_low_saturation;  // s > 0.1, where the estimate loses validity
    bool near_resonance;           // |delta| <= 5 Gamma/2
};

ScatteringRate scattering_rate_at(const TrapSetup& setup, const Vec3& position);

double recoil_energy(const TrapSetup& setup);

// Peak intensity that gives a low-saturation depth |V_eff(focus)| = depth.
double peak_intensity_for_depth(const IonSpecies& ion, const Transition& transition,
                                double detuning, double depth);

// hbar omega / kB.
double motional_temperature(double omega);

struct AxisFrequency {
    double optical_squared;   // (rad/s)^2, from the potential Hessian
    double static_squared;    // signed static curvature
    double combined_squared;  // sum of the two

    bool confined() const { return combined_squared > 0.0; }
    double optical() const;
    // NaN for an anticonfined axis.
    double combined() const;
};

struct FrequencyScale {
    std::string name;
    double angular_frequency;  // rad/s
};

struct TrapSummary {
    double depth;  // U0 [J]
    double saturation_at_focus;
    double recoil_energy;
    double scattering_rate_at_focus;

    // Optical-only frequencies of the low-saturation potential.
    double omega_radial;
    double omega_axial;
    // Same for the exact-log potential: smaller by sqrt(1 + s0).
    double omega_radial_exact_log;
    double omega_axial_exact_log;

    // Per lab axis (x, y, z), diagonal of the combined Hessian.
    std::array<AxisFrequency, 3> axes;
    std::array<AxisFrequency, 3> axes_exact_log;
    std::vector<int> anticonfined_axes;

    // Typical secular frequency: geometric mean over confined axes.
    double omega0;

    // Named scales sorted ascending.
    std::vector<FrequencyScale> hierarchy;
};

// Lab-axis frequencies for the given potential model.
std::array<AxisFrequency, 3> axis_frequencies(const TrapSetup& setup,
                                              PotentialModel model = PotentialModel::low_saturation);

// Throws PhysicsError(BlueDetunedUnsupported) for delta >= 0. Anticonfined axes
// are listed in the summary rather than thrown.
TrapSummary trap_summary(const TrapSetup& setup);

}  // namespace iontrap
