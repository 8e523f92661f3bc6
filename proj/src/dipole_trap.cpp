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

#include "iontrap/dipole_trap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iontrap/charge_corrections.hpp"
#include "iontrap/errors.hpp"

namespace iontrap {

double saturation_per_intensity(const TrapSetup& setup) {
    const auto& k = kConstants;
    const double d = effective_dipole(setup);
    const double delta = setup.beam.detuning();
    const double gamma = setup.transition.linewidth();
    // Omega^2 = d^2 E^2 / hbar^2 = 2 d^2 I / (eps0 c hbar^2), s = (Omega^2/2) / (delta^2 + Gamma^2/4)
    return d * d / (k.eps0 * k.c * k.hbar * k.hbar * (delta * delta + 0.25 * gamma * gamma));
}

double saturation_at(const TrapSetup& setup, const Vec3& position) {
    return saturation_per_intensity(setup) * intensity_at(setup.beam, position);
}

double effective_potential_at(const TrapSetup& setup, const Vec3& position, PotentialModel model) {
    const double s = saturation_at(setup, position);
    const double prefactor = 0.5 * kConstants.hbar * setup.beam.detuning();
    return model == PotentialModel::low_saturation ? prefactor * s : prefactor * std::log1p(s);
}

Vec3 dipolar_force_at(const TrapSetup& setup, const Vec3& position, PotentialModel model) {
    const double kappa = saturation_per_intensity(setup);
    const Vec3 grad_s = kappa * intensity_gradient_at(setup.beam, position);
    const double prefactor = -0.5 * kConstants.hbar * setup.beam.detuning();
    if (model == PotentialModel::low_saturation) return prefactor * grad_s;
    const double s = kappa * intensity_at(setup.beam, position);
    return prefactor / (1.0 + s) * grad_s;
}

MeanForce mean_force_at(const TrapSetup& setup, const Vec3& position) {
    const double s = saturation_at(setup, position);
    const double push = 0.5 * kConstants.hbar * setup.transition.linewidth() * s / (1.0 + s) *
                        setup.beam.wavenumber();
    return {dipolar_force_at(setup, position, PotentialModel::exact_log), push * setup.beam.axis()};
}

ScatteringRate scattering_rate_at(const TrapSetup& setup, const Vec3& position) {
    const double gamma = setup.transition.linewidth();
    const double delta = setup.beam.detuning();
    const double s = saturation_at(setup, position);
    double rate;
    if (delta != 0.0) {
        const double v = effective_potential_at(setup, position, PotentialModel::low_saturation);
        rate = gamma / delta * v / kConstants.hbar;
    } else {
        rate = 0.5 * gamma * s;
    }
    return {rate, s > 0.1, std::abs(delta) <= 2.5 * gamma};
}

double recoil_energy(const TrapSetup& setup) {
    const double p = kConstants.hbar * setup.beam.wavenumber();
    return p * p / (2.0 * setup.ion.total_mass());
}

double peak_intensity_for_depth(const IonSpecies& ion, const Transition& transition, double detuning,
                                double depth) {
    if (!(std::isfinite(depth) && depth >= 0.0)) throw ConfigError("trap depth must be >= 0");
    if (detuning == 0.0) throw ConfigError("a trap depth cannot be reached at zero detuning");
    const auto& k = kConstants;
    const double d = effective_charge(ion) / k.e_charge * transition.dipole_moment();
    const double gamma = transition.linewidth();
    const double s0 = 2.0 * depth / (k.hbar * std::abs(detuning));
    const double kappa =
        d * d / (k.eps0 * k.c * k.hbar * k.hbar * (detuning * detuning + 0.25 * gamma * gamma));
    return s0 / kappa;
}

double motional_temperature(double omega) { return kConstants.hbar * omega / kConstants.kB; }

double AxisFrequency::optical() const {
    return optical_squared >= 0.0 ? std::sqrt(optical_squared)
                                  : std::numeric_limits<double>::quiet_NaN();
}

double AxisFrequency::combined() const {
    return confined() ? std::sqrt(combined_squared) : std::numeric_limits<double>::quiet_NaN();
}

namespace {

struct OpticalCurvature {
    double radial_squared;
    double axial_squared;
    double depth;
    double s0;
};

// Closed-form Hessian of the low-saturation potential at the focus:
// M w_r^2 = 4 U0 / w0^2, M w_z^2 = 2 U0 / zR^2. Signed, so a blue-detuned beam
// yields negative curvatures.
OpticalCurvature optical_curvature(const TrapSetup& setup, PotentialModel model) {
    const double v = effective_potential_at(setup, Vec3::Zero(), PotentialModel::low_saturation);
    const double s0 = saturation_at(setup, Vec3::Zero());
    const double m = setup.ion.total_mass();
    const double w0 = setup.beam.waist();
    const double zr = setup.beam.rayleigh_range();
    double radial = -4.0 * v / (m * w0 * w0);
    double axial = -2.0 * v / (m * zr * zr);
    if (model == PotentialModel::exact_log) {
        radial /= 1.0 + s0;
        axial /= 1.0 + s0;
    }
    return {radial, axial, std::abs(v), s0};
}

}  // namespace

std::array<AxisFrequency, 3> axis_frequencies(const TrapSetup& setup, PotentialModel model) {
    const auto curv = optical_curvature(setup, model);
    const Vec3& n = setup.beam.axis();
    std::array<AxisFrequency, 3> axes{};
    for (int i = 0; i < 3; ++i) {
        const double optical = curv.radial_squared * (1.0 - n[i] * n[i]) + curv.axial_squared * n[i] * n[i];
        const double fixed = setup.static_curvatures[i];
        axes[i] = {optical, fixed, optical + fixed};
    }
    return axes;
}

TrapSummary trap_summary(const TrapSetup& setup) {
    if (setup.beam.detuning() >= 0.0) {
        throw PhysicsError(PhysicsError::Kind::BlueDetunedUnsupported,
                           "trap summary requires a red-detuned beam (delta < 0)");
    }
    TrapSummary out{};
    const auto low = optical_curvature(setup, PotentialModel::low_saturation);
    const auto exact = optical_curvature(setup, PotentialModel::exact_log);
    out.depth = low.depth;
    out.saturation_at_focus = low.s0;
    out.recoil_energy = recoil_energy(setup);
    out.scattering_rate_at_focus = scattering_rate_at(setup, Vec3::Zero()).rate;
    out.omega_radial = std::sqrt(low.radial_squared);
    out.omega_axial = std::sqrt(low.axial_squared);
    out.omega_radial_exact_log = std::sqrt(exact.radial_squared);
    out.omega_axial_exact_log = std::sqrt(exact.axial_squared);
    out.axes = axis_frequencies(setup, PotentialModel::low_saturation);
    out.axes_exact_log = axis_frequencies(setup, PotentialModel::exact_log);

    double log_sum = 0.0;
    int confined = 0;
    for (int i = 0; i < 3; ++i) {
        if (out.axes[i].confined()) {
            log_sum += std::log(out.axes[i].combined());
            ++confined;
        } else {
            out.anticonfined_axes.push_back(i);
        }
    }
    if (confined > 0) {
        out.omega0 = std::exp(log_sum / confined);
    } else {
        out.omega0 = std::cbrt(out.omega_radial * out.omega_radial * out.omega_axial);
    }

    const auto& k = kConstants;
    out.hierarchy = {
        {"omega0", out.omega0},
        {"E_rec/hbar", out.recoil_energy / k.hbar},
        {"Gamma", setup.transition.linewidth()},
        {"U0/hbar", out.depth / k.hbar},
        {"Omega", rabi_frequency_at(setup, Vec3::Zero())},
        {"|delta|", std::abs(setup.beam.detuning())},
        {"omega_L", setup.beam.omega_L()},
        {"omega_eg", setup.transition.omega_eg()},
    };
    std::stable_sort(out.hierarchy.begin(), out.hierarchy.end(),
                     [](const FrequencyScale& a, const FrequencyScale& b) {
                         return a.angular_frequency < b.angular_frequency;
                     });
    return out;
}

}  // namespace iontrap
