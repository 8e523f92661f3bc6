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

#include "iontrap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>

#include <Eigen/Dense>
#include <fftw3.h>

#include "iontrap/errors.hpp"
#include "iontrap/ode.hpp"

namespace iontrap {

namespace {

using State6 = ode::State<6>;
using State2 = ode::State<2>;

constexpr double kEscapeWaists = 100.0;
constexpr double kFarStartWaists = 5.0;

void append_sample(TrajectoryRecord& rec, double t, const Vec3& r, const Vec3& v, double kinetic,
                   double potential) {
    rec.times.push_back(t);
    rec.positions.push_back(r);
    rec.velocities.push_back(v);
    rec.kinetic.push_back(kinetic);
    rec.potential.push_back(potential);
    rec.total.push_back(kinetic + potential);
}

void fnv_mix(std::uint64_t& h, double x) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof x);
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
}

}  // namespace

std::uint64_t setup_hash(const TrapSetup& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (double x : {s.ion.total_mass(), s.ion.total_charge(), s.transition.omega_eg(), s.transition.linewidth(),
                     s.beam.wavelength(), s.beam.waist(), s.beam.power(), s.beam.detuning(), s.beam.axis()[0],
                     s.beam.axis()[1], s.beam.axis()[2], s.static_curvatures[0], s.static_curvatures[1],
                     s.static_curvatures[2], s.temperature})
        fnv_mix(h, x);
    return h;
}

double secular_potential_energy(const TrapSetup& setup, const Vec3& position, PotentialModel model) {
    const double m = setup.ion.total_mass();
    const double fixed = 0.5 * m * (setup.static_curvatures.array() * position.array().square()).sum();
    return effective_potential_at(setup, position, model) + fixed;
}

TrajectoryRecord integrate_full(const TrapSetup& setup, const InitialState& initial, double t_end,
                                const FullOptions& options) {
    if (!(std::isfinite(t_end) && t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (options.samples == 0) throw ConfigError("samples must be positive");
    if (!(options.rel_tol > 0.0 && options.abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
    if (!initial.position.allFinite() || !initial.velocity.allFinite())
        throw ConfigError("initial state must be finite");

    const double m = setup.ion.total_mass();
    const double w0 = setup.beam.waist();
    const double escape = kEscapeWaists * w0;
    const Vec3 axis = setup.beam.axis();
    const double gamma_k = 0.5 * kConstants.hbar * setup.transition.linewidth() * setup.beam.wavenumber();
    const double kappa = saturation_per_intensity(setup);
    const Vec3 curv = setup.static_curvatures;
    const PotentialModel model = options.potential;
    const bool push = options.radiation_pressure;

    auto rhs = [&](double, const State6& y) -> State6 {
        const Vec3 r(y[0], y[1], y[2]);
        if (r.norm() > escape) {
            throw PhysicsError(PhysicsError::Kind::EscapedTrap, "ion left the trap (|R| > 100 waists)");
        }
        Vec3 f = dipolar_force_at(setup, r, model);
        if (push) {
            const double s = kappa * intensity_at(setup.beam, r);
            f += gamma_k * s / (1.0 + s) * axis;
        }
        const Vec3 acc = f / m - curv.cwiseProduct(r);
        return {y[3], y[4], y[5], acc[0], acc[1], acc[2]};
    };

    double w_scale = 0.0;
    for (const auto& ax : axis_frequencies(setup, PotentialModel::low_saturation)) {
        w_scale = std::max({w_scale, std::sqrt(std::abs(ax.optical_squared)), std::sqrt(std::abs(ax.static_squared))});
    }
    if (w_scale == 0.0) w_scale = 1.0 / t_end;

    const double vel_tol = options.abs_tol * w_scale;
    const State6 abs_tol{options.abs_tol, options.abs_tol, options.abs_tol, vel_tol, vel_tol, vel_tol};
    const State6 y0{initial.position[0], initial.position[1], initial.position[2],
                    initial.velocity[0], initial.velocity[1], initial.velocity[2]};
    ode::DormandPrince45<6, decltype(rhs)> stepper(rhs, 0.0, y0, abs_tol, options.rel_tol, 1e-2 / w_scale);

    TrajectoryRecord rec;
    rec.metadata.integrator = "dormand-prince-5(4)";
    rec.metadata.rel_tol = options.rel_tol;
    rec.metadata.abs_tol = options.abs_tol;
    rec.metadata.setup_hash = setup_hash(setup);
    if (initial.position.norm() > kFarStartWaists * w0)
        rec.metadata.warnings.push_back("initial position more than 5 waists from the focus");

    auto record = [&](double t, const State6& y) {
        const Vec3 r(y[0], y[1], y[2]);
        const Vec3 v(y[3], y[4], y[5]);
        append_sample(rec, t, r, v, 0.5 * m * v.squaredNorm(), secular_potential_energy(setup, r, model));
    };
    record(0.0, y0);
    const double dt = t_end / static_cast<double>(options.samples);
    for (std::size_t i = 1; i <= options.samples; ++i) {
        const double t = i == options.samples ? t_end : dt * static_cast<double>(i);
        stepper.advance_to(t);
        record(t, stepper.state());
    }
    rec.metadata.accepted_steps = stepper.accepted_steps();
    rec.metadata.rejected_steps = stepper.rejected_steps();
    return rec;
}

namespace {

void validate_driven(const DrivenOscillatorSpec& s) {
    for (double x : {s.omega0, s.drive_frequency, s.charge, s.field_amplitude, s.mass, s.x0, s.v0})
        if (!std::isfinite(x)) throw ConfigError("driven oscillator parameters must be finite");
    if (!(s.omega0 > 0.0 && s.drive_frequency > 0.0)) throw ConfigError("frequencies must be positive");
    if (!(s.mass > 0.0)) throw ConfigError("mass must be positive");
    if (std::abs(s.drive_frequency - s.omega0) / s.omega0 < 1e-3) {
        throw PhysicsError(PhysicsError::Kind::Resonance, "drive frequency within 1e-3 of resonance");
    }
}

}  // namespace

DrivenSolution analytic_driven_solution(const DrivenOscillatorSpec& spec) {
    validate_driven(spec);
    const double wd = spec.drive_frequency;
    const double w0 = spec.omega0;
    const double amp = spec.charge * spec.field_amplitude / (spec.mass * (wd * wd - w0 * w0));
    // x(t) = -amp cos(wd t) + C cos(w0 t) + D sin(w0 t)
    const double c = spec.x0 + amp;
    const double d = spec.v0 / w0;
    return {amp, 0.25 * spec.mass * amp * amp * wd * wd, std::hypot(c, d)};
}

TrajectoryRecord integrate_driven(const DrivenOscillatorSpec& spec, double t_end, const DrivenOptions& options) {
    validate_driven(spec);
    if (spec.drive_frequency / spec.omega0 > kMaxDriveRatio) {
        throw PhysicsError(PhysicsError::Kind::UnreachableScale,
                           "drive/trap frequency ratio above 1e6 is not integrated directly");
    }
    if (!(std::isfinite(t_end) && t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (options.steps_per_drive_period < 64) throw ConfigError("need at least 64 steps per drive period");

    const double period = kTwoPi / spec.drive_frequency;
    const long steps = static_cast<long>(std::ceil(t_end / period * options.steps_per_drive_period - 1e-9));
    const double h = t_end / static_cast<double>(steps);
    const long stride = options.samples == 0 ? 1 : std::max(1L, steps / static_cast<long>(options.samples));

    const double force = spec.charge * spec.field_amplitude / spec.mass;
    const double wd = spec.drive_frequency;
    const double w02 = spec.omega0 * spec.omega0;
    auto rhs = [=](double t, const State2& y) -> State2 {
        return {y[1], force * std::cos(wd * t) - w02 * y[0]};
    };

    TrajectoryRecord rec;
    rec.metadata.integrator = "rk8-fixed";
    rec.metadata.rel_tol = 0.0;
    rec.metadata.abs_tol = 0.0;
    const double m = spec.mass;
    ode::integrate_rk8<2>(rhs, 0.0, State2{spec.x0, spec.v0}, h, steps,
                          [&](long n, double t, const State2& y) {
                              if (n % stride != 0 && n != steps) return;
                              append_sample(rec, t, Vec3(y[0], 0.0, 0.0), Vec3(y[1], 0.0, 0.0),
                                            0.5 * m * y[1] * y[1], 0.5 * m * w02 * y[0] * y[0]);
                          });
    rec.metadata.accepted_steps = steps;
    return rec;
}

double DrivenFit::drive_amplitude() const { return std::hypot(drive_cos, drive_sin); }

double DrivenFit::secular_amplitude() const { return std::hypot(secular_cos, secular_sin); }

DrivenFit fit_driven_response(const TrajectoryRecord& record, double omega0, double drive_frequency) {
    const auto n = static_cast<Eigen::Index>(record.size());
    if (n < 8) throw ConfigError("trajectory too short to fit");
    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = record.times[i];
        design(i, 0) = std::cos(drive_frequency * t);
        design(i, 1) = std::sin(drive_frequency * t);
        design(i, 2) = std::cos(omega0 * t);
        design(i, 3) = std::sin(omega0 * t);
        x[i] = record.positions[i][0];
    }
    const Eigen::Vector4d c = design.colPivHouseholderQr().solve(x);
    return {c[0], c[1], c[2], c[3]};
}

double equilibrium_shift(const TrapSetup& setup, bool radiation_pressure, PotentialModel model) {
    const Vec3 n = setup.beam.axis();
    const double m = setup.ion.total_mass();
    const double static_axial = n.dot(setup.static_curvatures.cwiseProduct(n));
    const double gamma_k = 0.5 * kConstants.hbar * setup.transition.linewidth() * setup.beam.wavenumber();
    auto axial_force = [&](double z) {
        const Vec3 r = z * n;
        double f = n.dot(dipolar_force_at(setup, r, model)) - m * static_axial * z;
        if (radiation_pressure) {
            const double s = saturation_at(setup, r);
            f += gamma_k * s / (1.0 + s);
        }
        return f;
    };

    const double f0 = axial_force(0.0);
    if (f0 == 0.0) return 0.0;
    const double zr = setup.beam.rayleigh_range();
    const double direction = f0 > 0.0 ? 1.0 : -1.0;
    constexpr int kScan = 4000;
    double lo = 0.0;
    double hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= kScan; ++i) {
        const double z = direction * zr * static_cast<double>(i) / kScan;
        if ((axial_force(z) > 0.0) != (f0 > 0.0)) {
            lo = direction * zr * static_cast<double>(i - 1) / kScan;
            hi = z;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) {
        throw PhysicsError(PhysicsError::Kind::NoRoot,
                           "no axial equilibrium within one Rayleigh range of the focus");
    }
    const bool lo_positive = axial_force(lo) > 0.0;
    while (std::abs(hi - lo) > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if ((axial_force(mid) > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

int dominant_component(const TrajectoryRecord& record) {
    int best = 0;
    double best_var = -1.0;
    for (int c = 0; c < 3; ++c) {
        double mean = 0.0;
        for (const auto& p : record.positions) mean += p[c];
        mean /= static_cast<double>(record.size());
        double var = 0.0;
        for (const auto& p : record.positions) var += (p[c] - mean) * (p[c] - mean);
        if (var > best_var) {
            best_var = var;
            best = c;
        }
    }
    return best;
}

double estimate_frequency(const TrajectoryRecord& record, int component) {
    const std::size_t n = record.size();
    if (n < 16) throw ConfigError("trajectory too short for a frequency estimate");
    const double dt = (record.times.back() - record.times.front()) / static_cast<double>(n - 1);

    std::vector<double> x(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += record.positions[i][component];
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double hann = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
        x[i] = (record.positions[i][component] - mean) * hann;
    }

    std::size_t padded = 1;
    while (padded < 4 * n) padded <<= 1;
    std::vector<double> input(padded, 0.0);
    std::copy(x.begin(), x.end(), input.begin());
    std::vector<fftw_complex> spectrum(padded / 2 + 1);
    fftw_plan plan =
        fftw_plan_dft_r2c_1d(static_cast<int>(padded), input.data(), spectrum.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    auto power = [&](std::size_t k) { return spectrum[k][0] * spectrum[k][0] + spectrum[k][1] * spectrum[k][1]; };
    std::size_t peak = 1;
    for (std::size_t k = 1; k < padded / 2; ++k)
        if (power(k) > power(peak)) peak = k;

    auto magnitude = [&](double omega) {
        std::complex<double> sum(0.0, 0.0);
        const auto step = std::polar(1.0, -omega * dt);
        std::complex<double> phase(1.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            sum += x[i] * phase;
            phase *= step;
        }
        return std::abs(sum);
    };
    const double bin = kTwoPi / (static_cast<double>(padded) * dt);
    double lo = (static_cast<double>(peak) - 1.0) * bin;
    double hi = (static_cast<double>(peak) + 1.0) * bin;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = magnitude(c);
    double fd = magnitude(d);
    for (int it = 0; it < 100 && (hi - lo) > 1e-12 * hi; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = magnitude(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = magnitude(d);
        }
    }
    return 0.5 * (lo + hi);
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
    std::string out = "t,x,y,z,vx,vy,vz,E_kin,E_pot,E_tot\n";
    char line[512];
    for (std::size_t i = 0; i < rec.size(); ++i) {
        const auto& r = rec.positions[i];
        const auto& v = rec.velocities[i];
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      rec.times[i], r[0], r[1], r[2], v[0], v[1], v[2], rec.kinetic[i], rec.potential[i],
                      rec.total[i]);
        out += line;
    }
    return out;
}

}  // namespace iontrap
