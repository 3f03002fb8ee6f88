#pragma once

#include "ionphase/errors.hpp"

namespace ionphase {

/// Laser frequency minus atomic resonance frequency, in rad/s.
/// Negative values are red-detuned.
struct Detuning {
    double rad_per_s = 0.0;

    /// Convenience constructor for detunings quoted in units of the
    /// linewidth gamma (rad/s).
    static Detuning from_linewidths(double linewidths, double gamma);
};

/// Parameters of one atomic dipole transition. Half-integer angular
/// momenta are stored as twice their value so that degeneracy ratios
/// stay exact integers.
struct Transition {
    double wavelength = 0.0;  // m
    double linewidth = 0.0;   // rad/s, spontaneous emission rate
    int j_lower_x2 = 0;       // 2J of the lower level
    int j_upper_x2 = 0;       // 2J' of the upper level
    double mass = 0.0;        // kg

    void validate() const;
};

/// The dimensionless complex Lorentzian factor shared by all phase
/// formulas: (1 + i 2*delta/gamma) / (1 + 4*delta^2/gamma^2).
struct ComplexResponse {
    double re = 0.0;
    double im = 0.0;
};

enum class PhaseModel { two_level, j_equal };

struct PhaseExtremum {
    Detuning detuning;  // magnitude of the extremizing detuning (>= 0)
    double phase = 0.0; // maximal |phase| in rad
};

/// sigma = 3 lambda^2 / (2 pi), the ideal two-level resonant cross section.
double resonant_cross_section_two_level(double wavelength);

/// sigma = lambda^2/(2 pi) * (2J'+1)/(2J+1).
double resonant_cross_section(const Transition& t);

/// gamma_sc = (sigma / A) * gamma_inc. The result may exceed the
/// incident rate when sigma > A.
double scattering_rate(double sigma, double mode_area, double incident_rate);

ComplexResponse lorentzian_kernel(Detuning delta, double gamma);

/// arg(1 - 2 g * kernel), the phase imprinted by a two-level atom with
/// coupling efficiency g. Range (-pi, pi], arg of a negative real is +pi.
double phase_two_level(double g, Detuning delta, double gamma);

/// arg(1 - (sigma / 2A) * kernel). On resonance this is exactly 0 for
/// A > sigma/2 and exactly pi for A < sigma/2.
double phase_from_mode_area(double sigma, double mode_area, Detuning delta,
                            double gamma);

/// arg(1 - (2 g / 3) * kernel), the J = J' phase shift. Identical to
/// phase_two_level(g/3, ...).
double phase_j_equal(double g, Detuning delta, double gamma);

/// Detuning magnitude maximizing |phase| and the maximal |phase|.
/// For the two-level model with g >= 0.5 the supremum pi sits at zero
/// detuning and is reported as such.
PhaseExtremum max_phase_over_detuning(double g, PhaseModel model,
                                      double gamma);

/// Wrap an angle to (-pi, pi].
double wrap_phase(double angle);

} // namespace ionphase
