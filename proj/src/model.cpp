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

#include "iontrap/model.hpp"

#include <cmath>
#include <string>

#include "iontrap/charge_corrections.hpp"
#include "iontrap/errors.hpp"

namespace iontrap {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw ConfigError(message);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

IonSpecies::IonSpecies(double total_mass, double total_charge)
    : total_mass_(total_mass), total_charge_(total_charge) {
    require(std::isfinite(total_mass) && total_mass > kConstants.m_electron,
            "ion mass must exceed the electron mass");
    require(std::isfinite(total_charge), "ion charge must be finite");
}

IonSpecies IonSpecies::from_atomic_units(double mass_u, double charge_e) {
    return IonSpecies(mass_u * kConstants.atomic_mass_unit, charge_e * kConstants.e_charge);
}

Transition::Transition(double omega_eg, double linewidth)
    : omega_eg_(omega_eg), linewidth_(linewidth) {
    require(finite_positive(omega_eg), "transition frequency must be positive");
    require(finite_positive(linewidth), "linewidth must be positive");
    require(linewidth / omega_eg < 1e-3, "linewidth too large for an optical two-level transition");
}

Transition Transition::from_wavelength(double wavelength, double linewidth) {
    require(finite_positive(wavelength), "transition wavelength must be positive");
    return Transition(kTwoPi * kConstants.c / wavelength, linewidth);
}

double Transition::dipole_moment() const { return dipole_from_linewidth(*this); }

double Transition::characteristic_size() const { return dipole_moment() / kConstants.e_charge; }

LaserBeam::LaserBeam(double wavelength, double waist, double drive, bool power_is_primary,
                     double detuning, const Vec3& axis)
    : wavelength_(wavelength),
      waist_(waist),
      drive_(drive),
      power_is_primary_(power_is_primary),
      detuning_(detuning) {
    require(finite_positive(wavelength), "laser wavelength must be positive");
    require(finite_positive(waist), "waist must be positive");
    require(waist > wavelength, "waist must exceed the wavelength (paraxial beam)");
    require(std::isfinite(drive) && drive >= 0.0, "beam power/intensity must be non-negative");
    require(std::isfinite(detuning), "detuning must be finite");
    const double norm = axis.norm();
    require(std::isfinite(norm) && norm > 0.0, "propagation axis must be a non-zero vector");
    axis_ = axis / norm;
}

LaserBeam LaserBeam::with_power(double wavelength, double waist, double power, double detuning,
                                const Vec3& axis) {
    return LaserBeam(wavelength, waist, power, true, detuning, axis);
}

LaserBeam LaserBeam::with_peak_intensity(double wavelength, double waist, double peak_intensity,
                                         double detuning, const Vec3& axis) {
    return LaserBeam(wavelength, waist, peak_intensity, false, detuning, axis);
}

double LaserBeam::power() const {
    return power_is_primary_ ? drive_ : drive_ * kPi * waist_ * waist_ / 2.0;
}

double LaserBeam::peak_intensity() const {
    return power_is_primary_ ? 2.0 * drive_ / (kPi * waist_ * waist_) : drive_;
}

double LaserBeam::omega_L() const { return kTwoPi * kConstants.c / wavelength_; }

double LaserBeam::wavenumber() const { return kTwoPi / wavelength_; }

double LaserBeam::rayleigh_range() const { return kPi * waist_ * waist_ / wavelength_; }

TrapSetup::TrapSetup(IonSpecies ion_, Transition transition_, LaserBeam beam_,
                     const Vec3& static_curvatures_, double temperature_)
    : ion(ion_),
      transition(transition_),
      beam(beam_),
      static_curvatures(static_curvatures_),
      temperature(temperature_) {
    require(static_curvatures.allFinite(), "static curvatures must be finite");
    require(std::isfinite(temperature) && temperature >= 0.0,
            "environment temperature must be >= 0");
}

double BeamGeometry::spot_size(double z) const {
    const double u = z / rayleigh_range;
    return waist * std::sqrt(1.0 + u * u);
}

BeamGeometry beam_geometry(const LaserBeam& beam) {
    return {beam.waist(), beam.rayleigh_range(), beam.wavenumber(), beam.omega_L()};
}

BeamCoordinates to_beam_frame(const LaserBeam& beam, const Vec3& position) {
    const double z = position.dot(beam.axis());
    return {position - z * beam.axis(), z};
}

double intensity_at(const LaserBeam& beam, const Vec3& position) {
    const auto [rho, z] = to_beam_frame(beam, position);
    const double w0 = beam.waist();
    const double zr = beam.rayleigh_range();
    const double w2 = w0 * w0 * (1.0 + (z / zr) * (z / zr));
    return 2.0 * beam.power() / (kPi * w2) * std::exp(-2.0 * rho.squaredNorm() / w2);
}

Vec3 intensity_gradient_at(const LaserBeam& beam, const Vec3& position) {
    const auto [rho, z] = to_beam_frame(beam, position);
    const double w0 = beam.waist();
    const double zr = beam.rayleigh_range();
    const double w2 = w0 * w0 * (1.0 + (z / zr) * (z / zr));
    const double intensity = 2.0 * beam.power() / (kPi * w2) * std::exp(-2.0 * rho.squaredNorm() / w2);

    // d ln I / d rho = -4 rho / w^2;  d ln I / dz = (dw^2/dz / w^2) (2 rho^2 / w^2 - 1)
    const double dw2_dz = 2.0 * w0 * w0 * z / (zr * zr);
    const double dlnI_dz = dw2_dz / w2 * (2.0 * rho.squaredNorm() / w2 - 1.0);
    return intensity * (-4.0 / w2 * rho + dlnI_dz * beam.axis());
}

FieldAmplitudes field_amplitudes_for_intensity(double intensity, double omega_L) {
    const double e = std::sqrt(2.0 * intensity / (kConstants.eps0 * kConstants.c));
    return {e, e / kConstants.c, e / omega_L};
}

FieldAmplitudes field_amplitudes_at(const TrapSetup& setup, const Vec3& position) {
    return field_amplitudes_for_intensity(intensity_at(setup.beam, position), setup.beam.omega_L());
}

double dipole_from_linewidth(const Transition& transition) {
    const auto& k = kConstants;
    const double w = transition.omega_eg();
    return std::sqrt(3.0 * kPi * k.eps0 * k.hbar * k.c * k.c * k.c * transition.linewidth() /
                     (w * w * w));
}

double effective_dipole(const TrapSetup& setup) {
    return effective_charge(setup.ion) / kConstants.e_charge * setup.transition.dipole_moment();
}

double rabi_frequency_at(const TrapSetup& setup, const Vec3& position) {
    return effective_dipole(setup) * field_amplitudes_at(setup, position).electric / kConstants.hbar;
}

}  // namespace iontrap
