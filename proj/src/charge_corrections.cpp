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

#include "iontrap/charge_corrections.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "iontrap/blackbody.hpp"
#include "iontrap/dipole_trap.hpp"
#include "iontrap/mathieu_floquet.hpp"

namespace iontrap {

double effective_charge(const IonSpecies& ion) {
    return std::abs(ion.electron_charge()) + ion.electron_mass() / ion.total_mass() * ion.total_charge();
}

namespace {

double depth_of(const TrapSetup& setup) {
    return std::abs(effective_potential_at(setup, Vec3::Zero(), PotentialModel::low_saturation));
}

}  // namespace

MonopoleDrive monopole_drive(const TrapSetup& setup) {
    const double q = setup.ion.total_charge();
    const double a = field_amplitudes_at(setup, Vec3::Zero()).vector_potential;
    const double energy = (q * a) * (q * a) / (2.0 * setup.ion.total_mass());
    const double depth = depth_of(setup);
    return {energy, depth > 0.0 ? energy / depth : 0.0, energy / kConstants.kB};
}

MultipoleRatios multipole_ratios(const TrapSetup& setup, std::optional<double> characteristic_momentum) {
    const double m = setup.ion.total_mass();
    const double kr = setup.beam.wavenumber() * setup.transition.characteristic_size();
    const double omega = rabi_frequency_at(setup, Vec3::Zero());
    double p = std::sqrt(2.0 * m * depth_of(setup));
    if (characteristic_momentum) p = std::min(p, std::abs(*characteristic_momentum));
    const double delta = std::abs(setup.beam.detuning());
    const double out_of_phase = delta > 0.0 ? setup.transition.linewidth() / delta : 1.0;
    return {kr, kr * omega / setup.beam.omega_L(), kr * kr, p / (m * kConstants.c) * out_of_phase};
}

RelativisticRatios relativistic_ratios(const TrapSetup& setup) {
    const auto& k = kConstants;
    const auto fields = field_amplitudes_at(setup, Vec3::Zero());
    const double photon = k.hbar * setup.beam.omega_L();

    // g_e mu_B S.B / hbar between the two spin states of a spin-1/2: |<up|S_x|down>| = hbar/2.
    constexpr double g_e = 2.0;
    const double coupling = 0.5 * g_e * k.bohr_magneton() * fields.magnetic;
    const double spin_flip = (coupling / photon) * (coupling / photon);

    // Spin-orbit term with the laser field, -(q_e hbar/(2 m_e c)^2) sigma.(E x p), relative to
    // d.E = e a0 E, with hydrogenic p ~ alpha m_e c and r ~ a0:
    //   e hbar alpha m_e c E / (4 m_e^2 c^2) / (e a0 E) = hbar alpha / (4 m_e c a0) = alpha^2 / 4.
    const double spin_orbit = k.fine_structure_alpha * k.fine_structure_alpha / 4.0;

    // (d x B)^2 / (8 mu) as an angular frequency.
    const double db = setup.transition.dipole_moment() * fields.magnetic;
    const double shift = db * db / (8.0 * setup.ion.reduced_mass() * k.hbar);
    return {spin_flip, spin_orbit, shift};
}

bool CorrectionEntry::outside_decade() const {
    if (value == 0.0 || paper_order == 0.0) return value != paper_order;
    return std::abs(std::log10(std::abs(value) / std::abs(paper_order))) > 1.0;
}

bool CorrectionEntry::decade_differs() const {
    if (value == 0.0 || paper_order == 0.0) return value != paper_order;
    auto exponent = [](double x) { return std::floor(std::log10(std::abs(x)) + 1e-12); };
    return exponent(value) != exponent(paper_order);
}

const CorrectionEntry& CorrectionLedger::at(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::out_of_range("no ledger entry named " + name);
}

std::vector<CorrectionEntry> CorrectionLedger::table_rows_by_ratio() const {
    std::vector<CorrectionEntry> rows;
    std::copy_if(entries.begin(), entries.end(), std::back_inserter(rows),
                 [](const CorrectionEntry& e) { return e.table_row; });
    std::stable_sort(rows.begin(), rows.end(), [](const CorrectionEntry& a, const CorrectionEntry& b) {
        return a.ratio_to_depth > b.ratio_to_depth;
    });
    return rows;
}

CorrectionLedger corrections_table(const TrapSetup& setup, const BlackbodyOptions& blackbody) {
    const auto& k = kConstants;
    const double depth = depth_of(setup);
    const auto& ion = setup.ion;
    const auto mono = monopole_drive(setup);
    const auto multi = multipole_ratios(setup);
    const auto rel = relativistic_ratios(setup);
    const auto summary = trap_summary(setup);
    const auto heat = heating_rate(setup, summary.omega0, blackbody.prefactor_multiplier);

    double micromotion = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        if (!summary.axes[axis].confined()) continue;
        micromotion = std::max(micromotion, micromotion_ratio_optical(setup, axis));
    }

    const double q_eff_shift =
        std::abs(effective_charge(ion) - std::abs(ion.electron_charge())) / std::abs(ion.electron_charge());
    const double per_depth = depth > 0.0 ? k.hbar / depth : 0.0;

    CorrectionLedger ledger;
    ledger.entries = {
        {"q_eff_correction", "m_e |Q| / (M |q_e|)", q_eff_shift, std::nullopt, q_eff_shift, 1e-4,
         "dipole_coupling", true, true},
        {"spin_orbit_coupling", "alpha^2 / 4", rel.spin_orbit_ratio, std::nullopt, rel.spin_orbit_ratio, 1e-5,
         "relativistic", true, false},
        {"octupole_multipole", "(k r)^2", multi.octupole_ratio, std::nullopt, multi.octupole_ratio, 1e-6,
         "multipole", true, false},
        {"monopole_coupling", "(Q A_L)^2 / (2 M U0)", mono.ratio_to_depth, mono.drive_energy, mono.ratio_to_depth,
         1e-8, "monopole", true, true},
        {"spin_flip_probability", "(g_e mu_B B_L / (2 hbar omega_L))^2", rel.spin_flip_probability,
         std::nullopt, rel.spin_flip_probability, 1e-15, "relativistic", false, false},
        {"quadratic_field_shift_rad_per_s", "(d B_L)^2 / (8 mu hbar)", rel.quadratic_field_shift,
         k.hbar * rel.quadratic_field_shift, rel.quadratic_field_shift * per_depth, kTwoPi * 1.0, "multipole",
         false, false},
        {"quadrupole_transition_amplitude", "(k r) Omega / omega_L", multi.quadrupole_amplitude, std::nullopt,
         multi.quadrupole_amplitude, 1e-8, "multipole", false, false},
        {"dipole_magnetic_momentum_coupling", "P/(M c) * Gamma/|delta|", multi.p_dot_a_ratio, std::nullopt,
         multi.p_dot_a_ratio, 1e-12, "monopole", false, false},
        {"blackbody_heating_rate_per_s", "Q^2 omega0^2 / (6 pi eps0 M c^3) * n(omega0, T)", heat.heating_rate,
         std::nullopt, heat.heating_rate * per_depth, 1e-7, "blackbody", false, true},
        {"micromotion_amplitude_ratio", "|q| / 2", micromotion, std::nullopt, micromotion, 1e-20, "micromotion",
         false, false},
    };
    return ledger;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string ledger_to_csv(const CorrectionLedger& ledger) {
    std::string out = "name,formula,value,ratio_to_U0,paper_order,section\n";
    char buf[96];
    for (const auto& e : ledger.entries) {
        out += csv_field(e.name) + ',' + csv_field(e.formula) + ',';
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,", e.value, e.ratio_to_depth, e.paper_order);
        out += buf;
        out += csv_field(e.section) + '\n';
    }
    return out;
}

}  // namespace iontrap
