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

// Shared fixtures: the 24Mg+ trap used throughout the tests.

#include <cmath>
#include <random>

#include "iontrap/config.hpp"
#include "iontrap/dipole_trap.hpp"
#include "iontrap/model.hpp"

namespace iontrap::testing {

inline constexpr double kWavelength = 280e-9;
inline const double kLinewidth = kTwoPi * 40e6;
inline const double kDetuning = -kTwoPi * 300e9;
inline constexpr double kWaist = 7e-6;
inline constexpr double kDepthKelvin = 50e-3;

// Same mapping as the config loader: laser at omega_eg + delta, beam set by depth.
inline TrapSetup mg24_setup(bool with_static = false, double charge_e = 1.0, double depth_kelvin = kDepthKelvin,
                            double linewidth = kLinewidth) {
    const IonSpecies ion = IonSpecies::from_atomic_units(24.0, charge_e);
    const Transition tr = Transition::from_wavelength(kWavelength, linewidth);
    const double wl = kTwoPi * kConstants.c / (tr.omega_eg() + kDetuning);
    const double i0 = peak_intensity_for_depth(ion, tr, kDetuning, units::kelvin_to_joule(depth_kelvin));
    const LaserBeam beam = LaserBeam::with_peak_intensity(wl, kWaist, i0, kDetuning);
    const double k2 = units::angular_from_hz(1e3) * units::angular_from_hz(1e3);
    const Vec3 curv = with_static ? Vec3(-1012.5 * k2, -1012.5 * k2, 2025.0 * k2) : Vec3::Zero();
    return TrapSetup(ion, tr, beam, curv, 300.0);
}

inline double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace iontrap::testing
