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

#include "iontrap/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "iontrap/blackbody.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/mathieu_floquet.hpp"

namespace iontrap {

using nlohmann::json;

namespace {

constexpr const char* kAxisNames[3] = {"x", "y", "z"};

double to_2pi_hz(double omega) { return units::hz_from_angular(omega); }

json axis_json(const AxisFrequency& ax, int i) {
    return {{"axis", kAxisNames[i]},
            {"optical_squared_rad2_per_s2", ax.optical_squared},
            {"static_squared_rad2_per_s2", ax.static_squared},
            {"combined_squared_rad2_per_s2", ax.combined_squared},
            {"confined", ax.confined()},
            {"combined_2pi_Hz", ax.confined() ? json(to_2pi_hz(ax.combined())) : json(nullptr)}};
}

// Numbers, or null for the non-finite values JSON cannot carry.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

double hierarchy_paper_order(const std::string& name) {
    if (name == "omega0" || name == "E_rec/hbar") return 1e5;
    if (name == "Gamma") return 0.4e8;
    if (name == "U0/hbar") return 1e9;
    if (name == "Omega") return 0.3e11;
    if (name == "|delta|") return 0.3e12;
    if (name == "omega_L" || name == "omega_eg") return 1e15;
    throw std::out_of_range("unknown frequency scale '" + name + "'");
}

json ledger_to_json(const CorrectionLedger& ledger) {
    json rows = json::array();
    for (const auto& e : ledger.entries) {
        rows.push_back({{"name", e.name},
                        {"formula", e.formula},
                        {"value", num(e.value)},
                        {"ratio_to_U0", num(e.ratio_to_depth)},
                        {"paper_order", e.paper_order},
                        {"section", e.section},
                        {"table_row", e.table_row},
                        {"charge_dependent", e.charge_dependent},
                        {"outside_decade", e.outside_decade()},
                        {"decade_differs", e.decade_differs()},
                        {"absolute_energy_J", e.absolute_energy ? num(*e.absolute_energy) : json(nullptr)}});
    }
    return rows;
}

DrivenOscillatorSpec driven_spec(const Config& config, const TrapSetup& setup) {
    if (!config.simulate) throw ConfigError("config has no 'simulate' block");
    const SimulateConfig& sim = *config.simulate;
    const double omega0 =
        sim.omega0_2pi_kHz ? units::angular_from_hz(*sim.omega0_2pi_kHz * 1e3) : trap_summary(setup).omega0;
    DrivenOscillatorSpec spec{};
    spec.omega0 = omega0;
    spec.drive_frequency = sim.drive_ratio * omega0;
    spec.charge = setup.ion.total_charge();
    spec.field_amplitude = sim.field_V_per_m ? *sim.field_V_per_m : field_amplitudes_at(setup, Vec3::Zero()).electric;
    spec.mass = setup.ion.total_mass();
    spec.x0 = sim.position_um[0] * 1e-6;
    spec.v0 = sim.velocity_m_per_s[0];
    return spec;
}

json build_report(const Config& config) {
    const TrapSetup setup = build_setup(config);
    const TrapSummary summary = trap_summary(setup);
    const bool neutral = setup.ion.total_charge() == 0.0;
    json notes = json::array();
    if (neutral) notes.push_back("neutral-atom limit: charge-dependent rows vanish");

    json hierarchy = json::array();
    for (const auto& s : summary.hierarchy) {
        const double value = to_2pi_hz(s.angular_frequency);
        const double order = hierarchy_paper_order(s.name);
        hierarchy.push_back({{"name", s.name},
                             {"angular_frequency_rad_per_s", s.angular_frequency},
                             {"frequency_2pi_Hz", value},
                             {"paper_order_2pi_Hz", order},
                             {"within_decade", std::abs(std::log10(value / order)) <= 1.0}});
    }

    json axes = json::array();
    json axes_log = json::array();
    for (int i = 0; i < 3; ++i) {
        axes.push_back(axis_json(summary.axes[i], i));
        axes_log.push_back(axis_json(summary.axes_exact_log[i], i));
    }
    json anticonfined = json::array();
    for (int i : summary.anticonfined_axes) anticonfined.push_back(kAxisNames[i]);

    const MeanForce force = mean_force_at(setup, Vec3::Zero());
    const FieldAmplitudes fields = field_amplitudes_at(setup, Vec3::Zero());
    json eq_shift = nullptr;
    try {
        eq_shift = equilibrium_shift(setup);
    } catch (const PhysicsError& e) {
        notes.push_back(std::string("no axial equilibrium: ") + e.what());
    }

    json trap = {
        {"depth_J", summary.depth},
        {"depth_mK", units::joule_to_kelvin(summary.depth) * 1e3},
        {"saturation_at_focus", summary.saturation_at_focus},
        {"recoil_energy_J", summary.recoil_energy},
        {"scattering_rate_at_focus_per_s", summary.scattering_rate_at_focus},
        {"omega_radial_2pi_Hz", to_2pi_hz(summary.omega_radial)},
        {"omega_axial_2pi_Hz", to_2pi_hz(summary.omega_axial)},
        {"omega_radial_exact_log_2pi_Hz", to_2pi_hz(summary.omega_radial_exact_log)},
        {"omega_axial_exact_log_2pi_Hz", to_2pi_hz(summary.omega_axial_exact_log)},
        {"omega0_2pi_Hz", num(to_2pi_hz(summary.omega0))},
        {"axes_low_saturation", axes},
        {"axes_exact_log", axes_log},
        {"anticonfined_axes", anticonfined},
        {"peak_intensity_W_per_m2", setup.beam.peak_intensity()},
        {"power_W", setup.beam.power()},
        {"laser_wavelength_m", setup.beam.wavelength()},
        {"rayleigh_range_m", setup.beam.rayleigh_range()},
        {"dipole_moment_C_m", dipole_from_linewidth(setup.transition)},
        {"field_E_V_per_m", fields.electric},
        {"field_B_T", fields.magnetic},
        {"field_A_T_m", fields.vector_potential},
        {"radiation_pressure_at_focus_N", force.radiation_pressure.norm()},
        {"equilibrium_shift_m", eq_shift},
    };

    const CorrectionLedger ledger = corrections_table(setup, {config.prefactor_multiplier});
    for (const auto& e : ledger.entries) {
        if (neutral && e.charge_dependent) continue;
        char buf[256];
        if (e.outside_decade()) {
            std::snprintf(buf, sizeof buf, "%s: computed %.3g vs quoted order %.3g (more than one decade apart)",
                          e.name.c_str(), e.value, e.paper_order);
            notes.push_back(buf);
        } else if (e.decade_differs()) {
            std::snprintf(buf, sizeof buf, "%s: computed %.3g vs quoted order %.3g (different power of ten)",
                          e.name.c_str(), e.value, e.paper_order);
            notes.push_back(buf);
        }
    }
    const MonopoleDrive drive = monopole_drive(setup);
    json monopole = {{"drive_energy_J", drive.drive_energy},
                     {"ratio_to_U0", drive.ratio_to_depth},
                     {"equivalent_temperature_nK", drive.equivalent_temperature * 1e9}};

    const HeatingEstimate bb = heating_rate(setup, summary.omega0, config.prefactor_multiplier);
    json blackbody = {{"omega0_2pi_Hz", num(to_2pi_hz(summary.omega0))},
                      {"temperature_K", setup.temperature},
                      {"mean_occupation", num(bb.mean_occupation)},
                      {"larmor_rate_per_s", bb.larmor_rate},
                      {"heating_rate_per_s", bb.heating_rate},
                      {"heating_timescale_s", num(bb.heating_timescale)},
                      {"paper_order_per_s", kBlackbodyPaperOrder},
                      {"decades_from_paper_order",
                       bb.heating_rate > 0.0 ? json(std::log10(bb.heating_rate / kBlackbodyPaperOrder)) : json(nullptr)},
                      {"prefactor_multiplier", config.prefactor_multiplier},
                      {"neutral", bb.neutral},
                      {"outside_recommended_range", bb.outside_recommended_range}};
    if (bb.outside_recommended_range) notes.push_back("blackbody: omega0 outside 2 pi x [10 kHz, 1 MHz]");
    if (bb.heating_rate > 0.0) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "blackbody: heating rate %.3g /s is %.2f decades from the quoted 1e-7 Hz",
                      bb.heating_rate, std::log10(bb.heating_rate / kBlackbodyPaperOrder));
        notes.push_back(buf);
    }

    json mathieu = json::array();
    for (int i = 0; i < 3; ++i) {
        try {
            const MathieuParams p = optical_mathieu_params(setup, i);
            const FloquetResult r = monodromy_stability(p);
            mathieu.push_back({{"axis", kAxisNames[i]},
                               {"a", p.a},
                               {"q", p.q},
                               {"drive_angular_frequency_rad_per_s", p.drive_angular_frequency},
                               {"stable", r.stable},
                               {"characteristic_exponent", num(r.characteristic_exponent)},
                               {"micromotion_ratio", num(r.micromotion_ratio)},
                               {"micromotion_ratio_small_parameter", num(micromotion_ratio_small_parameter(p.a, p.q))},
                               {"stiffness_warning", r.stiffness_warning}});
        } catch (const PhysicsError& e) {
            mathieu.push_back({{"axis", kAxisNames[i]}, {"anticonfined", true}, {"message", e.what()}});
        }
    }

    json report = {{"config", config.source},
                   {"hierarchy", hierarchy},
                   {"trap_summary", trap},
                   {"corrections", ledger_to_json(ledger)},
                   {"monopole_drive", monopole},
                   {"blackbody", blackbody},
                   {"mathieu", mathieu},
                   {"notes", notes}};

    if (config.simulate && config.simulate->mode == SimulateConfig::Mode::driven) {
        const DrivenOscillatorSpec spec = driven_spec(config, setup);
        const DrivenSolution sol = analytic_driven_solution(spec);
        report["driven_analytic"] = {{"omega0_rad_per_s", spec.omega0},
                                     {"drive_frequency_rad_per_s", spec.drive_frequency},
                                     {"field_V_per_m", spec.field_amplitude},
                                     {"steady_amplitude_m", sol.steady_amplitude},
                                     {"drive_kinetic_energy_J", sol.drive_kinetic_energy},
                                     {"secular_amplitude_m", sol.secular_amplitude}};
    }
    return report;
}

std::string report_json_text(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string fmt(const json& v, int digits) {
    if (v.is_null()) return "n/a";
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_string()) return v.get<std::string>();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v.get<double>());
    return buf;
}

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out += cells[c];
            if (c + 1 < cells.size()) out += std::string(width[c] - cells[c].size() + 2, ' ');
        }
        return out + "\n";
    };
    std::string out = line(header);
    std::size_t total = 0;
    for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
    out += std::string(total, '-') + "\n";
    for (const auto& r : rows) out += line(r);
    return out;
}

}  // namespace

std::string render_report_text(const json& report, int digits) {
    std::string out = "Frequency scales (2 pi x Hz)\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& h : report.at("hierarchy")) {
        rows.push_back({h.at("name").get<std::string>(), fmt(h.at("frequency_2pi_Hz"), digits),
                        fmt(h.at("paper_order_2pi_Hz"), digits), fmt(h.at("within_decade"), digits)});
    }
    out += table({"scale", "value", "paper_order", "within_decade"}, rows);

    out += "\nCorrections to the dipolar trapping Hamiltonian\n\n";
    rows.clear();
    std::vector<json> entries(report.at("corrections").begin(), report.at("corrections").end());
    std::stable_sort(entries.begin(), entries.end(), [](const json& a, const json& b) {
        const bool ta = a.at("table_row").get<bool>();
        const bool tb = b.at("table_row").get<bool>();
        if (ta != tb) return ta;
        if (!ta) return false;
        return a.at("ratio_to_U0").get<double>() > b.at("ratio_to_U0").get<double>();
    });
    for (const auto& e : entries) {
        rows.push_back({e.at("name").get<std::string>(), e.at("formula").get<std::string>(), fmt(e.at("value"), digits),
                        fmt(e.at("ratio_to_U0"), digits), fmt(e.at("paper_order"), digits),
                        e.at("section").get<std::string>(), e.at("outside_decade").get<bool>()   ? "flagged"
                        : e.at("decade_differs").get<bool>() ? "order"
                                                             : ""});
    }
    out += table({"effect", "formula", "value", "ratio_to_U0", "paper_order", "section", "flag"}, rows);

    const json& trap = report.at("trap_summary");
    out += "\nTrap summary\n\n";
    rows = {{"U0 [mK]", fmt(trap.at("depth_mK"), digits)},
            {"s0", fmt(trap.at("saturation_at_focus"), digits)},
            {"omega_radial [2 pi x Hz]", fmt(trap.at("omega_radial_2pi_Hz"), digits)},
            {"omega_axial [2 pi x Hz]", fmt(trap.at("omega_axial_2pi_Hz"), digits)},
            {"omega0 [2 pi x Hz]", fmt(trap.at("omega0_2pi_Hz"), digits)},
            {"scattering rate [1/s]", fmt(trap.at("scattering_rate_at_focus_per_s"), digits)},
            {"radiation pressure [N]", fmt(trap.at("radiation_pressure_at_focus_N"), digits)},
            {"equilibrium shift [m]", fmt(trap.at("equilibrium_shift_m"), digits)},
            {"monopole drive [nK]", fmt(report.at("monopole_drive").at("equivalent_temperature_nK"), digits)},
            {"blackbody n", fmt(report.at("blackbody").at("mean_occupation"), digits)},
            {"blackbody rate [1/s]", fmt(report.at("blackbody").at("heating_rate_per_s"), digits)}};
    out += table({"quantity", "value"}, rows);

    out += "\nMathieu parameters per axis\n\n";
    rows.clear();
    for (const auto& m : report.at("mathieu")) {
        if (m.contains("anticonfined")) {
            rows.push_back({m.at("axis").get<std::string>(), "n/a", "n/a", "anticonfined", "n/a"});
            continue;
        }
        rows.push_back({m.at("axis").get<std::string>(), fmt(m.at("a"), digits), fmt(m.at("q"), digits),
                        fmt(m.at("stable"), digits), fmt(m.at("micromotion_ratio"), digits)});
    }
    out += table({"axis", "a", "q", "stable", "micromotion_ratio"}, rows);

    if (!report.at("notes").empty()) {
        out += "\nNotes\n\n";
        for (const auto& n : report.at("notes")) out += "- " + n.get<std::string>() + "\n";
    }
    return out;
}

int float_digits_from_env() {
    const char* raw = std::getenv("TRAP_FLOAT_DIGITS");
    if (raw == nullptr) return 9;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0') return 9;
    return static_cast<int>(std::clamp(v, 1L, 17L));
}

SimulationOutcome run_simulation(const Config& config) {
    if (!config.simulate) throw ConfigError("config has no 'simulate' block");
    const SimulateConfig& sim = *config.simulate;
    const TrapSetup setup = build_setup(config);
    const double t_end = sim.t_end_ms * 1e-3;
    SimulationOutcome out;

    if (sim.mode == SimulateConfig::Mode::full) {
        FullOptions opt;
        opt.rel_tol = sim.rel_tol;
        opt.abs_tol = sim.abs_tol_m;
        opt.samples = sim.samples;
        opt.radiation_pressure = sim.radiation_pressure;
        opt.potential = sim.potential;
        InitialState init;
        init.position = Vec3(sim.position_um[0], sim.position_um[1], sim.position_um[2]) * 1e-6;
        init.velocity = Vec3(sim.velocity_m_per_s[0], sim.velocity_m_per_s[1], sim.velocity_m_per_s[2]);
        out.record = integrate_full(setup, init, t_end, opt);
        out.component = dominant_component(out.record);
        out.frequency = estimate_frequency(out.record, out.component);
        return out;
    }

    const DrivenOscillatorSpec spec = driven_spec(config, setup);
    DrivenOptions opt;
    opt.steps_per_drive_period = sim.steps_per_drive_period;
    opt.samples = sim.driven_samples;
    out.record = integrate_driven(spec, t_end, opt);
    out.record.metadata.setup_hash = setup_hash(setup);
    out.component = 0;
    out.frequency = estimate_frequency(out.record, 0);
    out.analytic_amplitude = analytic_driven_solution(spec).steady_amplitude;
    // Response is -A cos(w_d t), so the cosine coefficient carries the signed amplitude.
    out.fitted_amplitude = -fit_driven_response(out.record, spec.omega0, spec.drive_frequency).drive_cos;
    return out;
}

std::string simulation_summary(const SimulationOutcome& o) {
    char buf[512];
    const auto& rec = o.record;
    int n = std::snprintf(buf, sizeof buf, "final_energy_J=%.12g frequency_2pi_Hz=%.12g component=%s steps=%ld",
                          rec.total.back(), units::hz_from_angular(o.frequency), kAxisNames[o.component],
                          rec.metadata.accepted_steps);
    std::string out(buf, static_cast<std::size_t>(n));
    if (o.fitted_amplitude && o.analytic_amplitude) {
        n = std::snprintf(buf, sizeof buf, " fitted_amplitude_m=%.12g analytic_amplitude_m=%.12g relative_error=%.3g",
                          *o.fitted_amplitude, *o.analytic_amplitude,
                          std::abs(*o.fitted_amplitude / *o.analytic_amplitude - 1.0));
        out.append(buf, static_cast<std::size_t>(n));
    }
    for (const auto& w : rec.metadata.warnings) out += "\nwarning: " + w;
    return out + "\n";
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        f << contents;
        if (!f.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace iontrap
