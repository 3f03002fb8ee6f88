#pragma once

#include <array>

#include "ionphase/atomic_response.hpp"

namespace ionphase {

/// CODATA values, fixed at compile time.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;            // J s
    double boltzmann = 1.380649e-23;          // J/K
    double atomic_mass_unit = 1.66053906660e-27; // kg

    static const PhysicalConstants& codata();
};

/// Geometry and drive parameters of the focused beam.
struct BeamGeometry {
    double mode_area = 0.0;         // m^2, effective mode area A
    double overlap = 1.0;           // eta in [0,1]
    double solid_angle_weight = 1.0; // dipole-weighted solid angle fraction
    double saturation = 0.0;        // on-resonance saturation parameter S
    double axial_waist = 0.0;       // m, field waist along the optical axis

    void validate() const;
};

/// Thermal state of the trapped ion. Extents are the rms wavepacket
/// widths per trap axis, consistent with the temperature.
struct MotionState {
    double temperature = 0.0;                       // K
    std::array<double, 3> trap_frequencies{};       // rad/s
    std::array<double, 3> extents{};                // m

    void validate(double mass,
                  const PhysicalConstants& c = PhysicalConstants::codata()) const;
};

/// Decomposition of the effective coupling efficiency.
struct CouplingBudget {
    double g_geometry = 0.0;
    double motion_factor = 1.0;
    double saturation_factor = 1.0;
    double g_effective = 0.0;
};

enum class GeometrySource { overlap, mode_area };

struct BudgetOptions {
    GeometrySource source = GeometrySource::overlap;
    bool motion = true;
    bool saturation = true;
    double temperature_excess = 1.5; // multiplier on the Doppler temperature
};

/// G = sigma / (4 A); A = sigma/4 is the free-space minimum, giving G = 1.
double coupling_from_mode_area(double sigma, double mode_area);

/// G = eta^2 * f_solid_angle. Half-solid-angle focusing caps G at 0.5.
double coupling_from_overlap(double overlap, double solid_angle_weight);

/// On-resonance scattered/incident rate ratio R = 4 G.
double scattering_ratio(double g);

/// Doppler cooling equilibrium temperature at red detuning delta:
/// (hbar gamma / 4 kB) * (gamma/(2|delta|) + 2|delta|/gamma).
/// Minimum hbar gamma / (2 kB) at delta = -gamma/2.
double doppler_temperature(Detuning delta, double gamma,
                           const PhysicalConstants& c = PhysicalConstants::codata());

/// rms extent of a classical thermal oscillator: sqrt(kB T / (m omega^2)).
double thermal_extent(double temperature, double mass, double trap_frequency,
                      const PhysicalConstants& c = PhysicalConstants::codata());

/// Field-averaging factor for a Gaussian wavepacket in a Gaussian focus:
/// product over axes of (1 + 2 sigma^2 / w^2)^(-1/2).
double motion_factor(const std::array<double, 3>& extents,
                     const std::array<double, 3>& focal_waists);

/// g_geometry scaled by the motion factor.
double motion_averaged_coupling(double g_geometry,
                                const std::array<double, 3>& extents,
                                const std::array<double, 3>& focal_waists);

/// g / (1 + s_eff) with s_eff = S / (1 + 4 delta^2/gamma^2).
double saturation_scaled_coupling(double g, double saturation, Detuning delta,
                                  double gamma);

/// MotionState at the given temperature with extents filled in.
MotionState thermal_motion_state(double temperature, double mass,
                                 const std::array<double, 3>& trap_frequencies,
                                 const PhysicalConstants& c = PhysicalConstants::codata());

/// Transverse waists from the mode area via A = pi wx wy / 2 (wx = wy),
/// axial waist taken from the beam config.
std::array<double, 3> focal_waists(const BeamGeometry& beam);

/// Compose the budget with an explicitly supplied geometry coupling.
/// The motion factor uses the Doppler temperature at the given detuning
/// times options.temperature_excess.
CouplingBudget build_budget(double g_geometry, const BeamGeometry& beam,
                            const Transition& transition,
                            const MotionState& motion, Detuning delta,
                            const BudgetOptions& options);

/// Same, with the geometry coupling derived from the beam per
/// options.source.
CouplingBudget build_budget(const BeamGeometry& beam,
                            const Transition& transition,
                            const MotionState& motion, Detuning delta,
                            const BudgetOptions& options);

} // namespace ionphase
