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

#include <numbers>

namespace iontrap {

//
// CODATA 2018 values, rounded to 9 significant digits. SI units throughout.
//
struct PhysicalConstants {
    double hbar = 1.05457182e-34;              // J s
    double c = 299792458.0;                    // m/s
    double eps0 = 8.85418781e-12;              // F/m
    double kB = 1.380649e-23;                  // J/K
    double e_charge = 1.60217663e-19;          // C
    double m_electron = 9.10938370e-31;        // kg
    double atomic_mass_unit = 1.66053907e-27;  // kg
    double bohr_radius = 5.29177211e-11;       // m
    double fine_structure_alpha = 7.29735257e-3;

    constexpr double bohr_magneton() const { return e_charge * hbar / (2.0 * m_electron); }
};

inline constexpr PhysicalConstants kConstants{};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Boundary conversions for the conventions used in configs and reports
// (frequencies quoted as 2*pi x Hz, temperatures in mK, lengths in nm/um).
namespace units {
constexpr double angular_from_hz(double hz) { return kTwoPi * hz; }
constexpr double hz_from_angular(double w) { return w / kTwoPi; }
constexpr double kelvin_to_joule(double t) { return kConstants.kB * t; }
constexpr double joule_to_kelvin(double e) { return e / kConstants.kB; }
}  // namespace units

}  // namespace iontrap
