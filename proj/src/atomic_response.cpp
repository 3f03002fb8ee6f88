#include "ionphase/atomic_response.hpp"

#include <cmath>
#include <numbers>

namespace ionphase {

namespace {

constexpr double pi = std::numbers::pi;

// arg(1 - c * kernel) with the (-pi, pi] convention. A negative zero in
// the imaginary part would flip atan2 onto the -pi branch, so it is
// normalized away before the call.
double arg_one_minus(double c, const ComplexResponse& k) {
    const double re = 1.0 - c * k.re;
    double im = -c * k.im;
    if (im == 0.0) im = 0.0; // collapse -0.0 to +0.0
    if (re == 0.0 && im == 0.0) {
        throw singular_point_error(
            "phase undefined: superposed field amplitude is exactly zero");
    }
    return std::atan2(im, re);
}

} // namespace

Detuning Detuning::from_linewidths(double linewidths, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("linewidth must be positive");
    return Detuning{linewidths * gamma};
}

void Transition::validate() const {
    if (!(wavelength > 0.0))
        throw std::domain_error("transition wavelength must be positive");
    if (!(linewidth > 0.0))
        throw std::domain_error("transition linewidth must be positive");
    if (!(mass > 0.0))
        throw std::domain_error("transition mass must be positive");
    if (j_lower_x2 < 0 || j_upper_x2 < 0)
        throw std::domain_error("angular momenta must be nonnegative");
}

double resonant_cross_section_two_level(double wavelength) {
    if (!(wavelength > 0.0))
        throw std::domain_error("wavelength must be positive");
    return 3.0 * (wavelength * wavelength / (2.0 * pi));
}

double resonant_cross_section(const Transition& t) {
    t.validate();
    // (2J'+1)/(2J+1) from the twice-J integers, exact before the divide.
    const double degeneracy =
        static_cast<double>(t.j_upper_x2 + 1) /
        static_cast<double>(t.j_lower_x2 + 1);
    return (t.wavelength * t.wavelength / (2.0 * pi)) * degeneracy;
}

double scattering_rate(double sigma, double mode_area, double incident_rate) {
    if (sigma < 0.0) throw std::domain_error("cross section must be >= 0");
    if (!(mode_area > 0.0)) throw std::domain_error("mode area must be positive");
    if (incident_rate < 0.0)
        throw std::domain_error("incident rate must be >= 0");
    return (sigma / mode_area) * incident_rate;
}

ComplexResponse lorentzian_kernel(Detuning delta, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("linewidth must be positive");
    if (!std::isfinite(delta.rad_per_s))
        throw std::domain_error("detuning must be finite");
    const double u = 2.0 * delta.rad_per_s / gamma;
    const double denom = 1.0 + u * u;
    return ComplexResponse{1.0 / denom, u / denom};
}

double phase_two_level(double g, Detuning delta, double gamma) {
    if (g < 0.0 || g > 1.0)
        throw std::domain_error("coupling efficiency must lie in [0, 1]");
    return arg_one_minus(2.0 * g, lorentzian_kernel(delta, gamma));
}

double phase_from_mode_area(double sigma, double mode_area, Detuning delta,
                            double gamma) {
    if (sigma < 0.0) throw std::domain_error("cross section must be >= 0");
    if (!(mode_area >= sigma / 4.0))
        throw std::domain_error(
            "mode area below sigma/4, the free-space minimum");
    return arg_one_minus(sigma / (2.0 * mode_area),
                         lorentzian_kernel(delta, gamma));
}

double phase_j_equal(double g, Detuning delta, double gamma) {
    if (g < 0.0 || g > 1.0)
        throw std::domain_error("coupling efficiency must lie in [0, 1]");
    return arg_one_minus(2.0 * g / 3.0, lorentzian_kernel(delta, gamma));
}

PhaseExtremum max_phase_over_detuning(double g, PhaseModel model,
                                      double gamma) {
    if (g < 0.0 || g > 1.0)
        throw std::domain_error("coupling efficiency must lie in [0, 1]");
    if (!(gamma > 0.0)) throw std::domain_error("linewidth must be positive");

    if (g == 0.0) return PhaseExtremum{Detuning{0.0}, 0.0};
    if (model == PhaseModel::two_level && g >= 0.5) {
        // Supremum pi at zero detuning (attained for g > 0.5).
        return PhaseExtremum{Detuning{0.0}, pi};
    }

    const auto phase_at = [&](double u) {
        // u = |2 delta / gamma| on the red side, where the phase is positive
        const Detuning d{-0.5 * u * gamma};
        return model == PhaseModel::two_level ? phase_two_level(g, d, gamma)
                                              : phase_j_equal(g, d, gamma);
    };

    // |phase| is unimodal in u with its maximum at u = sqrt(1 - c) <= 1.
    double lo = 0.0, hi = 4.0;
    for (int i = 0; i < 200; ++i) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (phase_at(m1) < phase_at(m2)) lo = m1; else hi = m2;
    }
    const double u_star = 0.5 * (lo + hi);
    return PhaseExtremum{Detuning{0.5 * u_star * gamma}, phase_at(u_star)};
}

double wrap_phase(double angle) {
    double w = std::remainder(angle, 2.0 * pi);
    if (w <= -pi) w = pi;
    return w;
}

} // namespace ionphase
