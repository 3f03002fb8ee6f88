#include "ionphase/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <sstream>

namespace ionphase {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double deg_per_rad = 180.0 / pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key,
                    int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != value.size())
        throw config_error("line " + std::to_string(line) + ": key '" + key +
                           "': cannot parse number '" + value + "'");
    return v;
}

std::string format_g10(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

Corrections parse_corrections(const std::string& value, const std::string& key,
                              int line) {
    Corrections c;
    if (value == "none" || value.empty()) return c;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item == "motion") c.motion = true;
        else if (item == "saturation") c.saturation = true;
        else if (item == "sideband_reference") c.sideband_reference = true;
        else if (item == "all") c.motion = c.saturation = c.sideband_reference = true;
        else
            throw config_error("line " + std::to_string(line) + ": key '" +
                               key + "': unknown correction '" + item + "'");
    }
    return c;
}

} // namespace

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig cfg;
    cfg.transition.wavelength = 369.5e-9;
    cfg.transition.linewidth = 2.0 * pi * 19.6e6;
    cfg.transition.j_lower_x2 = 1;
    cfg.transition.j_upper_x2 = 1;
    cfg.transition.mass =
        174.0 * PhysicalConstants::codata().atomic_mass_unit;

    // Mode area matching the central coupling through G = sigma/(4A) with
    // the two-level cross section (Eq. 8 keeps the level-structure factor
    // separate from G).
    cfg.beam.mode_area =
        resonant_cross_section_two_level(cfg.transition.wavelength) /
        (4.0 * cfg.coupling_central);
    cfg.beam.overlap = 1.0;
    cfg.beam.solid_angle_weight = 0.5;
    cfg.beam.saturation = 0.05;
    cfg.beam.axial_waist = 500e-9;

    cfg.trap_frequencies = {2.0 * pi * 480e3, 2.0 * pi * 480e3,
                            2.0 * pi * 1025e3};
    cfg.detuning_grid_gamma = expand_detuning_grid("-3:0.25:3");
    return cfg;
}

void ExperimentConfig::validate() const {
    transition.validate();
    beam.validate();
    for (double f : trap_frequencies)
        if (!(f > 0.0)) throw config_error("trap frequencies must be positive");
    if (!(temperature_excess > 0.0))
        throw config_error("temperature_excess must be positive");
    if (coupling_central - coupling_uncertainty < 0.0 ||
        coupling_central + coupling_uncertainty > 1.0)
        throw config_error(
            "coupling_central +- coupling_uncertainty must lie in [0, 1]");
    if (coupling_uncertainty < 0.0)
        throw config_error("coupling_uncertainty must be >= 0");
    if (detuning_grid_gamma.empty())
        throw config_error("detuning grid must be nonempty");
    if (!std::is_sorted(detuning_grid_gamma.begin(),
                        detuning_grid_gamma.end()))
        throw config_error("detuning grid must be sorted");
    if (dark_rate < 0.0) throw config_error("dark rate must be >= 0");
    heterodyne.validate();
}

BudgetOptions ExperimentConfig::budget_options() const {
    BudgetOptions opt;
    opt.motion = corrections.motion;
    opt.saturation = corrections.saturation;
    opt.temperature_excess = temperature_excess;
    return opt;
}

MotionState ExperimentConfig::motion_state() const {
    MotionState m;
    m.trap_frequencies = trap_frequencies;
    return m;
}

std::vector<double> expand_detuning_grid(const std::string& spec) {
    std::vector<double> grid;
    const auto c1 = spec.find(':');
    if (c1 != std::string::npos) {
        const auto c2 = spec.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw config_error("grid spec must be lo:step:hi");
        const double lo = std::stod(spec.substr(0, c1));
        const double step = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        const double hi = std::stod(spec.substr(c2 + 1));
        if (!(step > 0.0)) throw config_error("grid step must be positive");
        if (hi < lo) throw config_error("grid upper bound below lower bound");
        const auto n = static_cast<long>(std::round((hi - lo) / step));
        for (long i = 0; i <= n; ++i)
            grid.push_back(lo + static_cast<double>(i) * step);
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) grid.push_back(std::stod(item));
        }
        std::sort(grid.begin(), grid.end());
    }
    if (grid.empty()) throw config_error("detuning grid must be nonempty");
    return grid;
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    bool mode_area_given = false;
    bool coupling_given = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ": line " + std::to_string(lineno) +
                               ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto num = [&] { return parse_double(value, key, lineno); };

        if (key == "wavelength_nm") cfg.transition.wavelength = num() * 1e-9;
        else if (key == "linewidth_mhz")
            cfg.transition.linewidth = 2.0 * pi * num() * 1e6;
        else if (key == "j_lower_x2")
            cfg.transition.j_lower_x2 = static_cast<int>(num());
        else if (key == "j_upper_x2")
            cfg.transition.j_upper_x2 = static_cast<int>(num());
        else if (key == "mass_amu")
            cfg.transition.mass =
                num() * PhysicalConstants::codata().atomic_mass_unit;
        else if (key == "mode_area_m2") {
            cfg.beam.mode_area = num();
            mode_area_given = true;
        } else if (key == "overlap") cfg.beam.overlap = num();
        else if (key == "solid_angle_weight")
            cfg.beam.solid_angle_weight = num();
        else if (key == "saturation_s") cfg.beam.saturation = num();
        else if (key == "axial_waist_m") cfg.beam.axial_waist = num();
        else if (key == "trap_radial_khz") {
            cfg.trap_frequencies[0] = cfg.trap_frequencies[1] =
                2.0 * pi * num() * 1e3;
        } else if (key == "trap_axial_khz")
            cfg.trap_frequencies[2] = 2.0 * pi * num() * 1e3;
        else if (key == "temperature_excess") cfg.temperature_excess = num();
        else if (key == "coupling_central") {
            cfg.coupling_central = num();
            coupling_given = true;
        } else if (key == "coupling_uncertainty")
            cfg.coupling_uncertainty = num();
        else if (key == "detuning_grid")
            cfg.detuning_grid_gamma = expand_detuning_grid(value);
        else if (key == "beat_mhz")
            cfg.heterodyne.beat_frequency = 2.0 * pi * num() * 1e6;
        else if (key == "trigger_mhz")
            cfg.heterodyne.trigger_frequency = num() * 1e6;
        else if (key == "bin_width_ps")
            cfg.heterodyne.bin_width = num() * 1e-12;
        else if (key == "duration_s") cfg.heterodyne.duration = num();
        else if (key == "mean_rate_hz") cfg.heterodyne.mean_rate = num();
        else if (key == "dark_rate_hz") cfg.dark_rate = num();
        else if (key == "visibility") cfg.heterodyne.visibility = num();
        else if (key == "instrumental_phase_rad")
            cfg.heterodyne.instrumental_phase = num();
        else if (key == "background_rate_hz")
            cfg.heterodyne.background_rate = num();
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(num());
        else if (key == "corrections")
            cfg.corrections = parse_corrections(value, key, lineno);
        else
            throw config_error(origin + ": line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }

    // Keep the default mode area tied to the coupling unless the file
    // pinned it explicitly.
    if (coupling_given && !mode_area_given && cfg.coupling_central > 0.0) {
        cfg.beam.mode_area =
            resonant_cross_section_two_level(cfg.transition.wavelength) /
            (4.0 * cfg.coupling_central);
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          std::uint64_t tag) {
    return splitmix64(splitmix64(master + splitmix64(index)) + tag);
}

namespace {

// Effective coupling at one grid point for a given geometry-level g.
double effective_coupling(const ExperimentConfig& cfg, double g,
                          Detuning delta) {
    const CouplingBudget budget =
        build_budget(g, cfg.beam, cfg.transition, cfg.motion_state(), delta,
                     cfg.budget_options());
    return budget.g_effective;
}

SweepRow theory_row(const ExperimentConfig& cfg, double detuning_gamma) {
    const double gamma = cfg.transition.linewidth;
    const Detuning delta = Detuning::from_linewidths(detuning_gamma, gamma);
    SweepRow row;
    row.detuning_gamma = detuning_gamma;
    row.detuning_rad_s = delta.rad_per_s;
    try {
        const double g_lo = cfg.coupling_central - cfg.coupling_uncertainty;
        const double g_hi = cfg.coupling_central + cfg.coupling_uncertainty;
        row.theory_rad = phase_j_equal(
            effective_coupling(cfg, cfg.coupling_central, delta), delta, gamma);
        row.theory_lo_rad =
            phase_j_equal(effective_coupling(cfg, g_lo, delta), delta, gamma);
        row.theory_hi_rad =
            phase_j_equal(effective_coupling(cfg, g_hi, delta), delta, gamma);
        if (row.theory_lo_rad > row.theory_hi_rad)
            std::swap(row.theory_lo_rad, row.theory_hi_rad);
    } catch (const std::exception& e) {
        throw config_error("detuning " + format_g10(detuning_gamma) +
                           " gamma: " + e.what());
    }
    return row;
}

void simulate_row(const ExperimentConfig& cfg, std::size_t index,
                  SweepRow& row) {
    const double gamma = cfg.transition.linewidth;
    const Detuning delta{row.detuning_rad_s};
    try {
        const double g_eff =
            effective_coupling(cfg, cfg.coupling_central, delta);
        const double atom_phase = phase_j_equal(g_eff, delta, gamma);
        const double sideband =
            cfg.corrections.sideband_reference
                ? sideband_reference_correction(
                      g_eff, delta, cfg.heterodyne.beat_frequency, gamma)
                : 0.0;

        HeterodyneConfig bright_cfg = cfg.heterodyne;
        HeterodyneConfig dark_cfg = cfg.heterodyne;
        dark_cfg.mean_rate = cfg.dark_rate;

        const double bright_phase =
            cfg.heterodyne.instrumental_phase + atom_phase + sideband;
        const double dark_phase = cfg.heterodyne.instrumental_phase;

        const auto bright_record = sample_detections(
            bright_cfg, bright_phase, derive_seed(cfg.seed, index, 1));
        const auto dark_record = sample_detections(
            dark_cfg, dark_phase, derive_seed(cfg.seed, index, 2));

        const CosineFit bright_fit = fit_cosine(
            fold_histogram(bright_record, bright_cfg), bright_cfg.beat_frequency);
        const CosineFit dark_fit = fit_cosine(
            fold_histogram(dark_record, dark_cfg), dark_cfg.beat_frequency);

        const PhaseMeasurement m = differential_phase(bright_fit, dark_fit);
        row.sim_rad = wrap_phase(m.differential - sideband);
        row.sim_err_rad = m.stderr_;
        row.flags = flags_to_string(m.flags);
    } catch (const std::exception& e) {
        row.flags = std::string("fit_failed:") + e.what();
        row.sim_rad.reset();
        row.sim_err_rad.reset();
    }
}

} // namespace

std::vector<SweepRow> theory_curve(const ExperimentConfig& config) {
    config.validate();
    std::vector<SweepRow> rows;
    rows.reserve(config.detuning_grid_gamma.size());
    for (double d : config.detuning_grid_gamma)
        rows.push_back(theory_row(config, d));
    return rows;
}

std::vector<SweepRow> simulate_sweep(const ExperimentConfig& config,
                                     unsigned threads) {
    std::vector<SweepRow> rows = theory_curve(config);
    if (threads == 0) threads = 1;

    const auto worker = [&](unsigned offset) {
        for (std::size_t i = offset; i < rows.size(); i += threads)
            simulate_row(config, i, rows[i]);
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::future<void>> futures;
        for (unsigned k = 0; k < threads; ++k)
            futures.push_back(std::async(std::launch::async, worker, k));
        for (auto& f : futures) f.get();
    }
    return rows;
}

double SweepRow::theory_deg() const { return theory_rad * deg_per_rad; }
double SweepRow::theory_lo_deg() const { return theory_lo_rad * deg_per_rad; }
double SweepRow::theory_hi_deg() const { return theory_hi_rad * deg_per_rad; }

std::string format_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "detuning_gamma,detuning_rad_s,theory_deg,theory_lo_deg,"
           "theory_hi_deg,sim_deg,sim_err_deg,flags\n";
    for (const auto& row : rows) {
        out << format_g10(row.detuning_gamma) << ','
            << format_g10(row.detuning_rad_s) << ','
            << format_g10(row.theory_deg()) << ','
            << format_g10(row.theory_lo_deg()) << ','
            << format_g10(row.theory_hi_deg()) << ',';
        if (row.sim_rad) out << format_g10(*row.sim_rad * deg_per_rad);
        out << ',';
        if (row.sim_err_rad) out << format_g10(*row.sim_err_rad * deg_per_rad);
        out << ',' << row.flags << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + path);
    out << format_csv(rows);
    if (!out) throw config_error("write failure: " + path);
}

std::vector<SweepRow> load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line != "detuning_gamma,detuning_rad_s,theory_deg,theory_lo_deg,"
                "theory_hi_deg,sim_deg,sim_err_deg,flags")
        throw config_error(path + ": unexpected CSV header");

    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::stringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 8) fields.emplace_back();
        if (fields.size() != 8)
            throw config_error(path + ": malformed row: " + line);

        SweepRow row;
        row.detuning_gamma = std::stod(fields[0]);
        row.detuning_rad_s = std::stod(fields[1]);
        row.theory_rad = std::stod(fields[2]) / deg_per_rad;
        row.theory_lo_rad = std::stod(fields[3]) / deg_per_rad;
        row.theory_hi_rad = std::stod(fields[4]) / deg_per_rad;
        if (!fields[5].empty()) row.sim_rad = std::stod(fields[5]) / deg_per_rad;
        if (!fields[6].empty())
            row.sim_err_rad = std::stod(fields[6]) / deg_per_rad;
        row.flags = fields[7];
        rows.push_back(row);
    }
    return rows;
}

} // namespace ionphase
