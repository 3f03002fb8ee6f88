#pragma once

#include <string>

#include "ionphase/atomic_response.hpp"
#include "ionphase/heterodyne.hpp"

namespace ionphase {

namespace fit_flags {
inline constexpr unsigned none = 0;
/// Amplitude consistent with zero (below twice its own standard error).
inline constexpr unsigned low_visibility = 1u << 0;
/// Differential formed from at least one low-visibility fit.
inline constexpr unsigned degraded = 1u << 1;
} // namespace fit_flags

std::string flags_to_string(unsigned flags);

/// Result of the fixed-frequency cosine fit to a folded histogram.
struct CosineFit {
    double amplitude = 0.0;         // counts per bin
    double amplitude_stderr = 0.0;
    double offset = 0.0;            // counts per bin
    double offset_stderr = 0.0;
    double phase = 0.0;             // rad, in (-pi, pi]
    double phase_stderr = 0.0;      // rad
    double visibility_estimate = 0.0;
    double residual_chi2 = 0.0;     // reduced chi^2
    unsigned flags = fit_flags::none;

    /// Flat key-value record: phase_rad, phase_stderr_rad, visibility,
    /// offset, chi2, flags.
    std::string to_record() const;
    void save(const std::string& path) const;
};

/// Bright/dark phase pair and their wrapped difference.
struct PhaseMeasurement {
    double bright_phase = 0.0;
    double dark_phase = 0.0;
    double differential = 0.0; // rad, wrapped to (-pi, pi]
    double stderr_ = 0.0;      // quadrature sum of the per-fit errors
    unsigned flags = fit_flags::none;
};

/// Weighted linear least squares of the bin counts on
/// {cos(w t), sin(w t), 1} at the known beat frequency, with Poisson
/// weights 1/max(count, 1). Phase and its standard error come from the
/// weighted-LSQ covariance.
CosineFit fit_cosine(const TdcHistogram& hist, double beat_frequency);

PhaseMeasurement differential_phase(const CosineFit& bright,
                                    const CosineFit& dark);

/// Phase picked up by the red sideband serving as the heterodyne
/// reference: phase_j_equal evaluated at (carrier detuning - w_rf).
double sideband_reference_correction(double g, Detuning delta_carrier,
                                     double beat_frequency, double gamma);

} // namespace ionphase
