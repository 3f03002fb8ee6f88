#include "ionphase/phase_estimation.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ionphase {

namespace {

// Solve M x = b for a symmetric positive definite 3x3 system and return
// the inverse of M alongside, via the adjugate.
struct Solved3 {
    std::array<double, 3> x;
    std::array<std::array<double, 3>, 3> inv;
};

Solved3 solve3(const std::array<std::array<double, 3>, 3>& m,
               const std::array<double, 3>& b) {
    const double det =
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det == 0.0 || !std::isfinite(det))
        throw insufficient_data_error("degenerate normal equations");

    Solved3 out;
    out.inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    out.inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    out.inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    out.inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    out.inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    out.inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    out.inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    out.inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    out.inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    for (int i = 0; i < 3; ++i) {
        out.x[i] = 0.0;
        for (int j = 0; j < 3; ++j) out.x[i] += out.inv[i][j] * b[j];
    }
    return out;
}

} // namespace

std::string flags_to_string(unsigned flags) {
    std::string s;
    if (flags & fit_flags::low_visibility) s += "low_visibility";
    if (flags & fit_flags::degraded) {
        if (!s.empty()) s += '|';
        s += "degraded";
    }
    return s;
}

CosineFit fit_cosine(const TdcHistogram& hist, double beat_frequency) {
    if (hist.total == 0)
        throw insufficient_data_error("histogram contains no counts");
    if (!(beat_frequency > 0.0))
        throw std::domain_error("beat frequency must be positive");
    const std::size_t n = hist.counts.size();
    if (n < 3)
        throw insufficient_data_error("need at least three bins to fit");

    // Weighted normal equations for counts on {cos(w t), sin(w t), 1}.
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs{};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = hist.bin_center(i);
        const double c = std::cos(beat_frequency * t);
        const double s = std::sin(beat_frequency * t);
        const double y = static_cast<double>(hist.counts[i]);
        const double w = 1.0 / std::max(y, 1.0); // Poisson weight
        const std::array<double, 3> f{c, s, 1.0};
        for (int a = 0; a < 3; ++a) {
            rhs[a] += w * y * f[a];
            for (int b = 0; b < 3; ++b) m[a][b] += w * f[a] * f[b];
        }
    }
    const Solved3 sol = solve3(m, rhs);
    const double a = sol.x[0];
    const double b = sol.x[1];
    const double offset = sol.x[2];

    CosineFit fit;
    fit.amplitude = std::hypot(a, b);
    fit.offset = offset;
    // model = amp * cos(w t + phase) + offset, so a = amp cos(phase),
    // b = -amp sin(phase)
    fit.phase = std::atan2(-b, a);
    fit.offset_stderr = std::sqrt(std::max(sol.inv[2][2], 0.0));

    const double amp2 = a * a + b * b;
    if (amp2 > 0.0) {
        const double caa = sol.inv[0][0];
        const double cbb = sol.inv[1][1];
        const double cab = sol.inv[0][1];
        fit.phase_stderr = std::sqrt(std::max(
            (b * b * caa - 2.0 * a * b * cab + a * a * cbb) / (amp2 * amp2),
            0.0));
        fit.amplitude_stderr = std::sqrt(std::max(
            (a * a * caa + 2.0 * a * b * cab + b * b * cbb) / amp2, 0.0));
    }
    fit.visibility_estimate = offset != 0.0 ? fit.amplitude / offset : 0.0;

    double chi2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = hist.bin_center(i);
        const double y = static_cast<double>(hist.counts[i]);
        const double model =
            a * std::cos(beat_frequency * t) + b * std::sin(beat_frequency * t) +
            offset;
        chi2 += (y - model) * (y - model) / std::max(y, 1.0);
    }
    fit.residual_chi2 = chi2 / static_cast<double>(n - 3);

    if (fit.amplitude < 2.0 * fit.amplitude_stderr)
        fit.flags |= fit_flags::low_visibility;
    return fit;
}

PhaseMeasurement differential_phase(const CosineFit& bright,
                                    const CosineFit& dark) {
    PhaseMeasurement m;
    m.bright_phase = bright.phase;
    m.dark_phase = dark.phase;
    m.differential = wrap_phase(bright.phase - dark.phase);
    m.stderr_ = std::hypot(bright.phase_stderr, dark.phase_stderr);
    if ((bright.flags | dark.flags) & fit_flags::low_visibility)
        m.flags |= fit_flags::degraded;
    return m;
}

double sideband_reference_correction(double g, Detuning delta_carrier,
                                     double beat_frequency, double gamma) {
    return phase_j_equal(g, Detuning{delta_carrier.rad_per_s - beat_frequency},
                         gamma);
}

std::string CosineFit::to_record() const {
    std::ostringstream out;
    out.precision(12);
    out << "phase_rad = " << phase << '\n'
        << "phase_stderr_rad = " << phase_stderr << '\n'
        << "visibility = " << visibility_estimate << '\n'
        << "offset = " << offset << '\n'
        << "chi2 = " << residual_chi2 << '\n'
        << "flags = " << flags_to_string(flags) << '\n';
    return out.str();
}

void CosineFit::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open for writing: " + path);
    out << to_record();
}

} // namespace ionphase
