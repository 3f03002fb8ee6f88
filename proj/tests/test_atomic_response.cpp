#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ionphase/atomic_response.hpp"

using namespace ionphase;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double gamma_yb = 2.0 * pi * 19.6e6;

// Independent route: evaluate arg(1 - c * kernel) with std::complex,
// building the kernel from first principles.
double oracle_phase(double c, double delta, double gamma) {
    const double u = 2.0 * delta / gamma;
    const std::complex<double> kernel(1.0 / (1.0 + u * u), u / (1.0 + u * u));
    return std::arg(1.0 - c * kernel);
}

Transition yb_transition() {
    return Transition{369.5e-9, gamma_yb, 1, 1, 174.0 * 1.66053906660e-27};
}

} // namespace

TEST_CASE("two-level resonant cross section") {
    const double lambda = 369.5e-9;
    // direct evaluation 3 lambda^2 / (2 pi)
    CHECK(resonant_cross_section_two_level(lambda) ==
          doctest::Approx(3.0 * lambda * lambda / (2.0 * pi)).epsilon(1e-15));
    CHECK(resonant_cross_section_two_level(lambda) ==
          doctest::Approx(6.519e-14).epsilon(1e-3));

    // quadratic scaling
    CHECK(resonant_cross_section_two_level(2.0 * lambda) /
              resonant_cross_section_two_level(lambda) ==
          doctest::Approx(4.0).epsilon(1e-15));

    CHECK_THROWS_AS(resonant_cross_section_two_level(0.0), std::domain_error);
    CHECK_THROWS_AS(resonant_cross_section_two_level(-1.0), std::domain_error);
}

TEST_CASE("cross section with angular momenta") {
    Transition t = yb_transition();
    const double sigma = resonant_cross_section(t);
    CHECK(sigma == doctest::Approx(2.173e-14).epsilon(1e-3));
    // exactly 1/3 of the two-level value (integer degeneracy ratio)
    CHECK(3.0 * sigma == resonant_cross_section_two_level(t.wavelength));

    // J=0 -> J'=1 restores the two-level value exactly
    t.j_lower_x2 = 0;
    t.j_upper_x2 = 2;
    CHECK(resonant_cross_section(t) ==
          resonant_cross_section_two_level(t.wavelength));

    // J=1 -> J'=0
    t.j_lower_x2 = 2;
    t.j_upper_x2 = 0;
    CHECK(resonant_cross_section(t) == doctest::Approx(7.243e-15).epsilon(1e-3));
}

TEST_CASE("scattering rate") {
    CHECK(scattering_rate(1e-14, 1e-14, 1000.0) == doctest::Approx(1000.0));
    CHECK(scattering_rate(2e-14, 1e-14, 100.0) == doctest::Approx(200.0));
    CHECK(scattering_rate(0.0, 1e-14, 1000.0) == 0.0);
    CHECK_THROWS_AS(scattering_rate(1e-14, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(scattering_rate(1e-14, -1.0, 1.0), std::domain_error);
}

TEST_CASE("lorentzian kernel") {
    const auto on_resonance = lorentzian_kernel(Detuning{0.0}, gamma_yb);
    CHECK(on_resonance.re == 1.0);
    CHECK(on_resonance.im == 0.0);

    const auto half = lorentzian_kernel(
        Detuning::from_linewidths(-0.5, gamma_yb), gamma_yb);
    CHECK(half.re == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(half.im == doctest::Approx(-0.5).epsilon(1e-15));

    // far-detuned limit: re ~ 1/u^2, im ~ 1/u with u = 2 delta/gamma = 100
    const auto far = lorentzian_kernel(
        Detuning::from_linewidths(50.0, gamma_yb), gamma_yb);
    CHECK(std::abs(far.re) < 1.1e-4);
    CHECK(std::abs(far.im) == doctest::Approx(100.0 / 10001.0).epsilon(1e-12));
    CHECK(far.re * far.re + far.im * far.im < 1.1e-4);

    CHECK_THROWS_AS(lorentzian_kernel(Detuning{0.0}, 0.0), std::domain_error);

    // |kernel|^2 = 1/(1+u^2) <= 1, equality only on resonance
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = d(rng);
        const auto k = lorentzian_kernel(
            Detuning::from_linewidths(u, gamma_yb), gamma_yb);
        const double mod2 = k.re * k.re + k.im * k.im;
        CHECK(mod2 == doctest::Approx(1.0 / (1.0 + 4.0 * u * u)).epsilon(1e-12));
        if (u != 0.0) CHECK(mod2 < 1.0);
    }
}

TEST_CASE("two-level phase shift") {
    CHECK(phase_two_level(0.0, Detuning{1e6}, gamma_yb) == 0.0);
    // on resonance above the dichotomy: arg(1 - 1.2) = pi
    CHECK(phase_two_level(0.6, Detuning{0.0}, gamma_yb) == pi);
    CHECK(phase_two_level(0.25, Detuning::from_linewidths(-0.5, gamma_yb),
                          gamma_yb) == doctest::Approx(0.32175).epsilon(1e-4));

    CHECK_THROWS_AS(phase_two_level(0.5, Detuning{0.0}, gamma_yb),
                    singular_point_error);
    CHECK_THROWS_AS(phase_two_level(-0.1, Detuning{0.0}, gamma_yb),
                    std::domain_error);
    CHECK_THROWS_AS(phase_two_level(1.1, Detuning{0.0}, gamma_yb),
                    std::domain_error);
}

TEST_CASE("on-resonance dichotomy") {
    // sign(1 - 2g) decides between exactly 0 and exactly pi
    for (double g = 0.0; g <= 1.0001; g += 0.1) {
        if (std::abs(g - 0.5) < 1e-9) continue;
        const double phase = phase_two_level(std::min(g, 1.0), Detuning{0.0},
                                             gamma_yb);
        if (g < 0.5) CHECK(phase == 0.0);
        else CHECK(phase == pi);
    }
}

TEST_CASE("phase from mode area") {
    const double sigma = resonant_cross_section_two_level(369.5e-9);

    CHECK(phase_from_mode_area(sigma, sigma, Detuning{0.0}, gamma_yb) == 0.0);
    CHECK(phase_from_mode_area(sigma, sigma / 3.0, Detuning{0.0}, gamma_yb) ==
          pi);

    // at the minimum mode area (G = 1), half-linewidth red detuning gives
    // arg(0 + i) = pi/2
    CHECK(phase_from_mode_area(sigma, sigma / 4.0,
                               Detuning::from_linewidths(-0.5, gamma_yb),
                               gamma_yb) == doctest::Approx(pi / 2).epsilon(1e-12));

    CHECK_THROWS_AS(phase_from_mode_area(sigma, sigma / 4.1, Detuning{0.0},
                                         gamma_yb),
                    std::domain_error);
    CHECK_THROWS_AS(phase_from_mode_area(sigma, sigma / 2.0, Detuning{0.0},
                                         gamma_yb),
                    singular_point_error);
}

TEST_CASE("J = J' phase shift") {
    const Detuning half = Detuning::from_linewidths(-0.5, gamma_yb);
    const double phase = phase_j_equal(0.137, half, gamma_yb);
    CHECK(phase == doctest::Approx(0.04782).epsilon(2e-4));
    CHECK(phase * 180.0 / pi == doctest::Approx(2.740).epsilon(1e-3));

    // no pi jump possible for J = J'
    CHECK(phase_j_equal(1.0, Detuning{0.0}, gamma_yb) == 0.0);

    // the 400 MHz red sideband point
    const double sideband = phase_j_equal(
        0.137, Detuning{-2.0 * pi * 400e6}, gamma_yb);
    CHECK(sideband == doctest::Approx(0.00224).epsilon(2e-2));
    CHECK(sideband * 180.0 / pi == doctest::Approx(0.128).epsilon(5e-3));
}

TEST_CASE("reduction identity: phase_j_equal(g) == phase_two_level(g/3)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> gd(0.0, 1.0);
    std::uniform_real_distribution<double> dd(-5.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        const double g = gd(rng);
        const Detuning delta = Detuning::from_linewidths(dd(rng), gamma_yb);
        CHECK(phase_j_equal(g, delta, gamma_yb) ==
              phase_two_level(g / 3.0, delta, gamma_yb));
    }
}

TEST_CASE("mode-area route consistent with coupling route") {
    const double sigma = resonant_cross_section_two_level(369.5e-9);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ad(0.25, 20.0);
    std::uniform_real_distribution<double> dd(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double area = ad(rng) * sigma;
        const Detuning delta = Detuning::from_linewidths(dd(rng), gamma_yb);
        CHECK(phase_from_mode_area(sigma, area, delta, gamma_yb) ==
              doctest::Approx(phase_two_level(sigma / (4.0 * area), delta,
                                              gamma_yb))
                  .epsilon(1e-14));
    }
}

TEST_CASE("antisymmetry in the detuning") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> gd(0.0, 1.0);
    std::uniform_real_distribution<double> dd(1e-3, 5.0);
    std::uniform_real_distribution<double> ld(1e6, 1e9);
    for (int i = 0; i < 10000; ++i) {
        const double g = gd(rng);
        const double gamma = ld(rng);
        const double d = dd(rng) * gamma;
        for (auto model : {PhaseModel::two_level, PhaseModel::j_equal}) {
            const auto phase = [&](double delta) {
                return model == PhaseModel::two_level
                           ? phase_two_level(g, Detuning{delta}, gamma)
                           : phase_j_equal(g, Detuning{delta}, gamma);
            };
            CHECK(std::abs(phase(d) + phase(-d)) < 1e-12);
        }
    }
}

TEST_CASE("max phase over detuning") {
    SUBCASE("J = J' bound is 30 degrees") {
        const auto ext = max_phase_over_detuning(1.0, PhaseModel::j_equal,
                                                 gamma_yb);
        CHECK(ext.phase == doctest::Approx(pi / 6.0).epsilon(1e-9));
        CHECK(ext.detuning.rad_per_s ==
              doctest::Approx(gamma_yb / (2.0 * std::sqrt(3.0))).epsilon(1e-6));
    }

    SUBCASE("published coupling") {
        const auto ext = max_phase_over_detuning(0.137, PhaseModel::j_equal,
                                                 gamma_yb);
        CHECK(ext.phase * 180.0 / pi == doctest::Approx(2.743).epsilon(1e-3));
        CHECK(ext.detuning.rad_per_s / gamma_yb ==
              doctest::Approx(0.4766).epsilon(1e-3));
    }

    SUBCASE("degenerate cases") {
        const auto zero = max_phase_over_detuning(0.0, PhaseModel::two_level,
                                                  gamma_yb);
        CHECK(zero.phase == 0.0);
        CHECK(zero.detuning.rad_per_s == 0.0);

        const auto sup = max_phase_over_detuning(0.7, PhaseModel::two_level,
                                                 gamma_yb);
        CHECK(sup.phase == pi);
        CHECK(sup.detuning.rad_per_s == 0.0);
    }

    SUBCASE("numerical search matches the closed form") {
        for (double g : {0.1, 0.3, 0.5, 0.7, 1.0}) {
            const double c = 2.0 * g / 3.0;
            const double closed = std::atan(c / (2.0 * std::sqrt(1.0 - c)));
            const auto ext = max_phase_over_detuning(g, PhaseModel::j_equal,
                                                     gamma_yb);
            CHECK(std::abs(ext.phase - closed) < 1e-9);
            CHECK(2.0 * ext.detuning.rad_per_s / gamma_yb ==
                  doctest::Approx(std::sqrt(1.0 - c)).epsilon(1e-6));
        }
    }

    SUBCASE("search agrees with a dense grid") {
        const double g = 0.42;
        double best = 0.0;
        for (int i = 1; i < 40000; ++i) {
            const double u = 4.0 * i / 40000.0;
            best = std::max(best, phase_j_equal(
                                      g, Detuning{-0.5 * u * gamma_yb},
                                      gamma_yb));
        }
        const auto ext = max_phase_over_detuning(g, PhaseModel::j_equal,
                                                 gamma_yb);
        CHECK(ext.phase >= best - 1e-12);
    }
}

TEST_CASE("oracle cross-check of the phase formulas") {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> gd(0.0, 1.0);
    std::uniform_real_distribution<double> dd(-4.0, 4.0);
    for (int i = 0; i < 2000; ++i) {
        const double g = gd(rng);
        const double d = dd(rng) * gamma_yb;
        CHECK(phase_two_level(g, Detuning{d}, gamma_yb) ==
              doctest::Approx(oracle_phase(2.0 * g, d, gamma_yb))
                  .epsilon(1e-13));
        CHECK(phase_j_equal(g, Detuning{d}, gamma_yb) ==
              doctest::Approx(oracle_phase(2.0 * g / 3.0, d, gamma_yb))
                  .epsilon(1e-13));
    }
}

TEST_CASE("wrap_phase convention") {
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK(wrap_phase(pi) == pi);
    CHECK(wrap_phase(-pi) == pi);
    CHECK(wrap_phase(6.0) == doctest::Approx(6.0 - 2.0 * pi).epsilon(1e-15));
    CHECK(wrap_phase(0.3 + 2.0 * pi) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("transition validation") {
    Transition t = yb_transition();
    t.mass = 0.0;
    CHECK_THROWS_AS(t.validate(), std::domain_error);
    t = yb_transition();
    t.j_lower_x2 = -1;
    CHECK_THROWS_AS(t.validate(), std::domain_error);
}
