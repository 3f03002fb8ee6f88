#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ionphase/errors.hpp"

namespace ionphase {

/// Parameters of the two-tone beat measurement. The beat frequency must
/// be an integer multiple of the trigger frequency so that folding the
/// detection times by the trigger period keeps the beat coherent, and
/// the bin width must divide the trigger period exactly.
struct HeterodyneConfig {
    double beat_frequency = 2.0 * 3.14159265358979323846 * 400e6; // rad/s
    double trigger_frequency = 10e6;  // Hz
    double bin_width = 100e-12;       // s
    double duration = 10.0;           // s
    double mean_rate = 5e4;           // 1/s, average detection rate R0
    double visibility = 0.5;          // beat modulation depth V
    double instrumental_phase = 0.0;  // rad, common-path offset
    double background_rate = 0.0;     // 1/s, flat detector background

    void validate() const;
    double trigger_period() const { return 1.0 / trigger_frequency; }
    std::size_t bin_count() const;
    /// Number of full beat oscillations per folded trigger period.
    long oscillations_per_period() const;
};

/// Absolute photon detection times, strictly increasing.
struct DetectionRecord {
    std::vector<double> arrival_times; // s

    /// One arrival time per line, seconds, 12 significant digits.
    void save(std::ostream& out) const;
    void save(const std::string& path) const;
    static DetectionRecord load(std::istream& in);
    static DetectionRecord load(const std::string& path);
};

/// Folded photon-count histogram over one trigger period.
struct TdcHistogram {
    std::vector<double> bin_edges;     // size counts.size() + 1
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    double bin_center(std::size_t i) const {
        return 0.5 * (bin_edges[i] + bin_edges[i + 1]);
    }

    /// CSV with header "bin_start_s,count".
    void save_csv(std::ostream& out) const;
    void save_csv(const std::string& path) const;
    static TdcHistogram load_csv(std::istream& in);
    static TdcHistogram load_csv(const std::string& path);
};

/// R0 * (1 + V cos(w_rf t + phase)) + background.
double beat_rate(double t, const HeterodyneConfig& config, double phase);

/// Inhomogeneous Poisson sample of detection times over [0, duration),
/// generated by thinning against the envelope rate. Deterministic for a
/// fixed seed.
DetectionRecord sample_detections(const HeterodyneConfig& config, double phase,
                                  std::uint64_t seed);

/// Fold arrival times modulo the trigger period and bin them.
TdcHistogram fold_histogram(const DetectionRecord& record,
                            const HeterodyneConfig& config);

} // namespace ionphase
