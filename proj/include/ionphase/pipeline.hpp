#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ionphase/coupling_budget.hpp"
#include "ionphase/heterodyne.hpp"
#include "ionphase/phase_estimation.hpp"

namespace ionphase {

struct Corrections {
    bool motion = false;
    bool saturation = false;
    bool sideband_reference = false;
};

/// Full experiment description. Defaults reproduce the published
/// parameter set: 369.5 nm, 19.6 MHz linewidth, J = J' = 1/2, 174 u,
/// G = 0.137 +- 0.014, trap at 480/1025 kHz.
struct ExperimentConfig {
    Transition transition;
    BeamGeometry beam;
    std::array<double, 3> trap_frequencies{}; // rad/s {radial, radial, axial}
    double temperature_excess = 1.5;
    double coupling_central = 0.137;
    double coupling_uncertainty = 0.014;
    std::vector<double> detuning_grid_gamma;  // sorted, units of gamma
    HeterodyneConfig heterodyne;
    double dark_rate = 5e4;                   // 1/s, dark-run detection rate
    std::uint64_t seed = 1;
    Corrections corrections;

    static ExperimentConfig defaults();
    void validate() const;
    BudgetOptions budget_options() const;
    MotionState motion_state() const;
};

/// One detuning grid point of a sweep.
struct SweepRow {
    double detuning_gamma = 0.0;
    double detuning_rad_s = 0.0;
    double theory_rad = 0.0;
    double theory_lo_rad = 0.0;
    double theory_hi_rad = 0.0;
    std::optional<double> sim_rad;
    std::optional<double> sim_err_rad;
    std::string flags;

    double theory_deg() const;
    double theory_lo_deg() const;
    double theory_hi_deg() const;
};

/// Parse the flat key-value config format ('#' comments, key = value).
/// Unknown keys are rejected; errors name the key and line.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<string>");

/// Expand a detuning grid spec: either "lo:step:hi" or a comma list,
/// in units of gamma.
std::vector<double> expand_detuning_grid(const std::string& spec);

/// Theory columns only: phase at g = central and central +- uncertainty,
/// with the enabled corrections applied through the coupling budget.
std::vector<SweepRow> theory_curve(const ExperimentConfig& config);

/// Full Monte Carlo sweep: per grid point, bright and dark heterodyne
/// runs with derived seeds, cosine fits, differential phase, optional
/// sideband reference correction. Deterministic for a fixed master seed
/// and independent of the thread count.
std::vector<SweepRow> simulate_sweep(const ExperimentConfig& config,
                                     unsigned threads = 1);

/// Per-point stream seeds: hash of (master seed, grid index, run tag).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          std::uint64_t tag);

std::string format_csv(const std::vector<SweepRow>& rows);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> load_csv(const std::string& path);

} // namespace ionphase
