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

#include <Eigen/Core>

#include "iontrap/constants.hpp"

namespace iontrap {

using Vec3 = Eigen::Vector3d;

//
// Domain types. Everything is stored in SI with angular frequencies in rad/s.
// All types validate their invariants on construction and are immutable.
//

// Hydrogen-like ion: a core plus one valence electron of charge -e.
class IonSpecies {
public:
    IonSpecies(double total_mass, double total_charge);

    static IonSpecies from_atomic_units(double mass_u, double charge_e);

    double total_mass() const { return total_mass_; }
    double total_charge() const { return total_charge_; }
    double electron_mass() const { return kConstants.m_electron; }
    double electron_charge() const { return -kConstants.e_charge; }
    double core_mass() const { return total_mass_ - kConstants.m_electron; }
    double core_charge() const { return total_charge_ - electron_charge(); }
    double reduced_mass() const { return electron_mass() * core_mass() / total_mass_; }

private:
    double total_mass_;
    double total_charge_;
};

// Closed two-level optical transition. The dipole moment is always derived
// from the linewidth, never supplied.
class Transition {
public:
    Transition(double omega_eg, double linewidth);

    static Transition from_wavelength(double wavelength, double linewidth);

    double omega_eg() const { return omega_eg_; }
    double linewidth() const { return linewidth_; }
    double dipole_moment() const;
    // d / |q_e|, the length scale r entering the multipole expansion.
    double characteristic_size() const;

private:
    double omega_eg_;
    double linewidth_;
};

// TEM00 travelling-wave beam focused at the origin.
class LaserBeam {
public:
    static LaserBeam with_power(double wavelength, double waist, double power, double detuning,
                                const Vec3& axis = Vec3::UnitZ());
    static LaserBeam with_peak_intensity(double wavelength, double waist, double peak_intensity,
                                         double detuning, const Vec3& axis = Vec3::UnitZ());

    double wavelength() const { return wavelength_; }
    double waist() const { return waist_; }
    double detuning() const { return detuning_; }
    const Vec3& axis() const { return axis_; }
    bool power_is_primary() const { return power_is_primary_; }

    double power() const;
    double peak_intensity() const;
    double omega_L() const;
    double wavenumber() const;
    double rayleigh_range() const;

private:
    LaserBeam(double wavelength, double waist, double drive, bool power_is_primary,
              double detuning, const Vec3& axis);

    double wavelength_;
    double waist_;
    double drive_;  // power [W] or peak intensity [W/m^2], see power_is_primary_
    bool power_is_primary_;
    double detuning_;
    Vec3 axis_;
};

// The single input record for every analysis. Static curvatures are signed
// squared angular frequencies per lab axis; the Laplace constraint on them is
// not enforced.
struct TrapSetup {
    TrapSetup(IonSpecies ion, Transition transition, LaserBeam beam,
              const Vec3& static_curvatures = Vec3::Zero(), double temperature = 0.0);

    IonSpecies ion;
    Transition transition;
    LaserBeam beam;
    Vec3 static_curvatures;
    double temperature;
};

struct BeamGeometry {
    double waist;
    double rayleigh_range;
    double wavenumber;
    double omega_L;

    double spot_size(double z) const;
};

// Position relative to the focus split into the beam frame.
struct BeamCoordinates {
    Vec3 transverse;  // component perpendicular to the axis
    double axial;     // component along the axis
};

struct FieldAmplitudes {
    double electric;  // E_L [V/m]
    double magnetic;  // B_L [T]
    double vector_potential;  // A_L [T m]
};

BeamGeometry beam_geometry(const LaserBeam& beam);
BeamCoordinates to_beam_frame(const LaserBeam& beam, const Vec3& position);

double intensity_at(const LaserBeam& beam, const Vec3& position);
Vec3 intensity_gradient_at(const LaserBeam& beam, const Vec3& position);

// Plane-wave envelope amplitudes for a given local intensity.
FieldAmplitudes field_amplitudes_for_intensity(double intensity, double omega_L);
FieldAmplitudes field_amplitudes_at(const TrapSetup& setup, const Vec3& position);

// d = sqrt(3 pi eps0 hbar c^3 Gamma / omega_eg^3).
double dipole_from_linewidth(const Transition& transition);

// Dipole scaled by q_eff / |q_e|; the polarization overlap is taken as one.
double effective_dipole(const TrapSetup& setup);

double rabi_frequency_at(const TrapSetup& setup, const Vec3& position);

}  // namespace iontrap
