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

#include <cstdint>
#include <string>
#include <vector>

#include "iontrap/dipole_trap.hpp"
#include "iontrap/model.hpp"

namespace iontrap {

struct TrajectoryMetadata {
    std::string integrator;
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    std::uint64_t setup_hash = 0;
    long accepted_steps = 0;
    long rejected_steps = 0;
    std::vector<std::string> warnings;
};

// Uniformly sampled center-of-mass time series. Energies in J.
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
    std::vector<double> kinetic;
    std::vector<double> potential;
    std::vector<double> total;
    TrajectoryMetadata metadata;

    std::size_t size() const { return times.size(); }
};

struct FullOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-16;  // m; velocities use abs_tol times the fastest trap frequency
    std::size_t samples = 2000;  // output intervals over [0, t_end]
    bool radiation_pressure = true;
    PotentialModel potential = PotentialModel::exact_log;
};

struct InitialState {
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
};

// Integrates M R'' = F_dipolar(R) + F_rad(R) - M diag(static) R with the
// adaptive Dormand-Prince 5(4) pair. Throws PhysicsError(EscapedTrap) once
// |R| exceeds 100 waists and PhysicsError(StepFailure) if the tolerance
// cannot be met.
TrajectoryRecord integrate_full(const TrapSetup& setup, const InitialState& initial, double t_end,
                                const FullOptions& options = {});

// Total potential energy of the secular motion (optical + static).
double secular_potential_energy(const TrapSetup& setup, const Vec3& position, PotentialModel model);

// Classical motion from H = (P - Q A)^2 / 2M + M w0^2 R^2 / 2 along one axis:
//   M x'' = Q E cos(w_d t) - M w0^2 x.
struct DrivenOscillatorSpec {
    double omega0;
    double drive_frequency;
    double charge;
    double field_amplitude;
    double mass;
    double x0 = 0.0;
    double v0 = 0.0;
};

struct DrivenOptions {
    int steps_per_drive_period = 64;
    std::size_t samples = 0;  // stride target for stored points; 0 stores every step
};

inline constexpr double kMaxDriveRatio = 1e6;

// Fixed-step 8th-order integration. Throws PhysicsError(UnreachableScale) when
// w_d/w0 > 1e6 and PhysicsError(Resonance) when |w_d - w0|/w0 < 1e-3.
TrajectoryRecord integrate_driven(const DrivenOscillatorSpec& spec, double t_end,
                                  const DrivenOptions& options = {});

struct DrivenSolution {
    // Q E / (M (w_d^2 - w0^2)); the driven response is x(t) = -steady_amplitude cos(w_d t).
    double steady_amplitude;
    double drive_kinetic_energy;  // M A^2 w_d^2 / 4, cycle-averaged
    double secular_amplitude;     // free oscillation left over from the initial conditions
};

DrivenSolution analytic_driven_solution(const DrivenOscillatorSpec& spec);

// Least-squares fit of x(t) to cos/sin at both frequencies.
struct DrivenFit {
    double drive_cos;     // coefficient of cos(w_d t)
    double drive_sin;     // coefficient of sin(w_d t)
    double secular_cos;
    double secular_sin;

    double drive_amplitude() const;
    double secular_amplitude() const;
};

DrivenFit fit_driven_response(const TrajectoryRecord& record, double omega0, double drive_frequency);

// Equilibrium position along the beam axis where dipolar + radiation-pressure
// + static forces cancel, by bracketed bisection to 1e-12 m. Zero when
// radiation pressure is off. Throws PhysicsError(NoRoot) if none within +-zR.
double equilibrium_shift(const TrapSetup& setup, bool radiation_pressure = true,
                         PotentialModel model = PotentialModel::exact_log);

// Dominant oscillation frequency [rad/s] of one coordinate of a uniformly
// sampled record: Hann-windowed DFT peak refined by golden-section search.
double estimate_frequency(const TrajectoryRecord& record, int component);

// Picks the coordinate with the largest variance.
int dominant_component(const TrajectoryRecord& record);

std::uint64_t setup_hash(const TrapSetup& setup);

std::string trajectory_csv(const TrajectoryRecord& record);

}  // namespace iontrap
