#include "ionphase/coupling_budget.hpp"

#include <cmath>
#include <numbers>

namespace ionphase {

namespace {
constexpr double pi = std::numbers::pi;
}

const PhysicalConstants& PhysicalConstants::codata() {
    static const PhysicalConstants c{};
    return c;
}

void BeamGeometry::validate() const {
    if (!(mode_area > 0.0))
        throw std::domain_error("mode area must be positive");
    if (overlap < 0.0 || overlap > 1.0)
        throw std::domain_error("overlap must lie in [0, 1]");
    if (solid_angle_weight < 0.0 || solid_angle_weight > 1.0)
        throw std::domain_error("solid angle weight must lie in [0, 1]");
    if (saturation < 0.0)
        throw std::domain_error("saturation parameter must be >= 0");
    if (!(axial_waist > 0.0))
        throw std::domain_error("axial waist must be positive");
}

void MotionState::validate(double mass, const PhysicalConstants& c) const {
    if (temperature < 0.0)
        throw std::domain_error("temperature must be >= 0");
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(trap_frequencies[i] > 0.0))
            throw std::domain_error("trap frequencies must be positive");
        const double expected =
            temperature > 0.0
                ? thermal_extent(temperature, mass, trap_frequencies[i], c)
                : 0.0;
        const double tol = 1e-9 * (expected + 1e-12);
        if (std::abs(extents[i] - expected) > tol)
            throw std::domain_error(
                "motion extents inconsistent with temperature");
    }
}

double coupling_from_mode_area(double sigma, double mode_area) {
    if (!(sigma > 0.0)) throw std::domain_error("cross section must be positive");
    if (!(mode_area >= sigma / 4.0))
        throw std::domain_error(
            "mode area below sigma/4, the free-space minimum");
    return sigma / (4.0 * mode_area);
}

double coupling_from_overlap(double overlap, double solid_angle_weight) {
    if (overlap < 0.0 || overlap > 1.0)
        throw std::domain_error("overlap must lie in [0, 1]");
    if (solid_angle_weight < 0.0 || solid_angle_weight > 1.0)
        throw std::domain_error("solid angle weight must lie in [0, 1]");
    return overlap * overlap * solid_angle_weight;
}

double scattering_ratio(double g) {
    if (g < 0.0 || g > 1.0)
        throw std::domain_error("coupling efficiency must lie in [0, 1]");
    return 4.0 * g;
}

double doppler_temperature(Detuning delta, double gamma,
                           const PhysicalConstants& c) {
    if (!(gamma > 0.0)) throw std::domain_error("linewidth must be positive");
    if (!(delta.rad_per_s < 0.0))
        throw no_cooling_error(
            "Doppler cooling requires red detuning (delta < 0)");
    const double d = -delta.rad_per_s;
    return c.hbar * gamma / (4.0 * c.boltzmann) *
           (gamma / (2.0 * d) + 2.0 * d / gamma);
}

double thermal_extent(double temperature, double mass, double trap_frequency,
                      const PhysicalConstants& c) {
    if (!(temperature > 0.0))
        throw std::domain_error("temperature must be positive");
    if (!(mass > 0.0)) throw std::domain_error("mass must be positive");
    if (!(trap_frequency > 0.0))
        throw std::domain_error("trap frequency must be positive");
    return std::sqrt(c.boltzmann * temperature /
                     (mass * trap_frequency * trap_frequency));
}

double motion_factor(const std::array<double, 3>& extents,
                     const std::array<double, 3>& focal_waists) {
    double factor = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (extents[i] < 0.0)
            throw std::domain_error("motion extents must be >= 0");
        if (!(focal_waists[i] > 0.0))
            throw std::domain_error("focal waists must be positive");
        const double r = extents[i] / focal_waists[i];
        factor /= std::sqrt(1.0 + 2.0 * r * r);
    }
    return factor;
}

double motion_averaged_coupling(double g_geometry,
                                const std::array<double, 3>& extents,
                                const std::array<double, 3>& focal_waists) {
    return g_geometry * motion_factor(extents, focal_waists);
}

double saturation_scaled_coupling(double g, double saturation, Detuning delta,
                                  double gamma) {
    if (saturation < 0.0)
        throw std::domain_error("saturation parameter must be >= 0");
    const double u = 2.0 * delta.rad_per_s / gamma;
    const double s_eff = saturation / (1.0 + u * u);
    return g / (1.0 + s_eff);
}

MotionState thermal_motion_state(double temperature, double mass,
                                 const std::array<double, 3>& trap_frequencies,
                                 const PhysicalConstants& c) {
    MotionState m;
    m.temperature = temperature;
    m.trap_frequencies = trap_frequencies;
    for (std::size_t i = 0; i < 3; ++i) {
        m.extents[i] = temperature > 0.0
                           ? thermal_extent(temperature, mass,
                                            trap_frequencies[i], c)
                           : 0.0;
    }
    return m;
}

std::array<double, 3> focal_waists(const BeamGeometry& beam) {
    beam.validate();
    const double w = std::sqrt(2.0 * beam.mode_area / pi);
    return {w, w, beam.axial_waist};
}

CouplingBudget build_budget(double g_geometry, const BeamGeometry& beam,
                            const Transition& transition,
                            const MotionState& motion, Detuning delta,
                            const BudgetOptions& options) {
    transition.validate();
    if (g_geometry < 0.0 || g_geometry > 1.0)
        throw std::domain_error("geometry coupling must lie in [0, 1]");

    CouplingBudget budget;
    budget.g_geometry = g_geometry;

    if (options.motion) {
        const double temperature =
            options.temperature_excess *
            doppler_temperature(delta, transition.linewidth);
        const MotionState thermal = thermal_motion_state(
            temperature, transition.mass, motion.trap_frequencies);
        budget.motion_factor =
            motion_factor(thermal.extents, focal_waists(beam));
    }
    if (options.saturation) {
        budget.saturation_factor = saturation_scaled_coupling(
            1.0, beam.saturation, delta, transition.linewidth);
    }
    budget.g_effective =
        budget.g_geometry * budget.motion_factor * budget.saturation_factor;
    return budget;
}

CouplingBudget build_budget(const BeamGeometry& beam,
                            const Transition& transition,
                            const MotionState& motion, Detuning delta,
                            const BudgetOptions& options) {
    beam.validate();
    const double g_geometry =
        options.source == GeometrySource::overlap
            ? coupling_from_overlap(beam.overlap, beam.solid_angle_weight)
            : coupling_from_mode_area(resonant_cross_section(transition),
                                      beam.mode_area);
    return build_budget(g_geometry, beam, transition, motion, delta, options);
}

} // namespace ionphase
