// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "zwm/rng.hpp"
#include "zwm/zwm_model.hpp"

using namespace zwm;

namespace {

ObjectSplitter random_splitter(Xorshift64Star& rng) {
    const Complex t(2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
    const Complex r(2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
    const double norm = std::sqrt(std::norm(t) + std::norm(r));
    if (norm < 1e-6) return ObjectSplitter::from_amplitude(0.5);
    return {t / norm, r / norm};
}

// Reduced signal state obtained by tracing the idler out of the explicit
// joint state sqrt(p1)|S_A>|phi_A> + e^{i phase} sqrt(p2)|S_B>|phi_B>.
ComplexMatrix traced_signal_oracle(const PureState& phi_a, const PureState& phi_b, double p1,
                                   double phase) {
    const int d = phi_a.dim();
    std::vector<std::vector<Complex>> joint(2, std::vector<Complex>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i) {
        joint[0][static_cast<std::size_t>(i)] = std::sqrt(p1) * phi_a[i];
        joint[1][static_cast<std::size_t>(i)] =
            std::polar(1.0, phase) * std::sqrt(1.0 - p1) * phi_b[i];
    }
    ComplexMatrix rho(2);
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp) {
            Complex sum = 0.0;
            for (int i = 0; i < d; ++i)
                sum += joint[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] *
                       std::conj(joint[static_cast<std::size_t>(sp)][static_cast<std::size_t>(i)]);
            rho.at(s, sp) = sum;
        }
    return rho;
}

}  // namespace

TEST_SUITE_BEGIN("zwm_model");

TEST_CASE("marker_states endpoints and overlap") {
    const auto [a1, b1] = marker_states(ObjectSplitter::from_amplitude(1.0));
    CHECK(std::abs(a1[0]) <= 1e-15);
    CHECK(a1[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(overlap(a1, b1)) == doctest::Approx(1.0).epsilon(1e-12));

    const auto [a0, b0] = marker_states(ObjectSplitter::from_amplitude(0.0));
    CHECK(a0[0].real() == doctest::Approx(1.0));
    CHECK(std::abs(overlap(a0, b0)) <= 1e-15);

    const auto [a, b] = marker_states(ObjectSplitter::from_amplitude(0.6));
    CHECK(a[0].real() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(a[1].real() == doctest::Approx(0.6).epsilon(1e-12));
    // componentwise oracle
    Complex inner = 0.0;
    for (int i = 0; i < 2; ++i) inner += std::conj(a[i]) * b[i];
    CHECK(overlap(a, b).real() == doctest::Approx(inner.real()).epsilon(1e-15));
    CHECK(std::abs(overlap(a, b)) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("overlap basics") {
    const PureState e0({Complex(1.0, 0.0), Complex(0.0, 0.0)});
    const PureState e1({Complex(0.0, 0.0), Complex(1.0, 0.0)});
    CHECK(overlap(e0, e0).real() == doctest::Approx(1.0));
    CHECK(std::abs(overlap(e0, e1)) == doctest::Approx(0.0));
    const PureState e3({Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)});
    CHECK_THROWS_AS(overlap(e0, e3), DimensionError);
}

TEST_CASE("visibility with and without mode overlap") {
    CHECK(visibility(ZwmConfig(ObjectSplitter::from_amplitude(1.0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(visibility(ZwmConfig(ObjectSplitter::from_amplitude(0.6))) ==
          doctest::Approx(0.6).epsilon(1e-12));

    // gamma = 0.9: oracle from the enlarged three-mode markers, where the
    // transmitted part splits into matched and mismatched components
    const double t = 0.6, r = 0.8, g = 0.9;
    const PureState big_a({Complex(r, 0.0), Complex(t * g, 0.0),
                           Complex(t * std::sqrt(1.0 - g * g), 0.0)});
    const PureState big_b({Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0)});
    const double oracle = std::abs(overlap(big_a, big_b));
    const ZwmConfig config(ObjectSplitter::from_amplitude(0.6), 0.0, Complex(0.9, 0.0));
    CHECK(visibility(config) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(visibility(config) == doctest::Approx(0.54).epsilon(1e-12));
}

TEST_CASE("distinguishability endpoints and value") {
    CHECK(distinguishability(ZwmConfig(ObjectSplitter::from_amplitude(0.0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distinguishability(ZwmConfig(ObjectSplitter::from_amplitude(1.0))) ==
          doctest::Approx(0.0));
    CHECK(distinguishability(ZwmConfig(ObjectSplitter::from_amplitude(0.6))) ==
          doctest::Approx(std::sqrt(1.0 - 0.36)).epsilon(1e-12));
}

TEST_CASE("complementarity identity holds for random splitters and overlaps") {
    Xorshift64Star rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        const ObjectSplitter s = random_splitter(rng);
        const Complex gamma = std::polar(rng.next_unit(), 6.28 * rng.next_unit());
        const ZwmConfig config(s, 0.0, gamma);
        const double v = visibility(config);
        const double d = distinguishability(config);
        CHECK(std::abs(d * d + v * v - 1.0) <= 1e-12);
    }
}

TEST_CASE("reduced_signal_state fixtures") {
    const DensityMatrix max_coh = reduced_signal_state(ZwmConfig(ObjectSplitter::from_amplitude(1.0)));
    CHECK(max_coh.matrix().at(0, 0).real() == doctest::Approx(0.5));
    CHECK(max_coh.matrix().at(0, 1).real() == doctest::Approx(0.5).epsilon(1e-12));

    const DensityMatrix no_coh = reduced_signal_state(ZwmConfig(ObjectSplitter::from_amplitude(0.0)));
    CHECK(std::abs(no_coh.matrix().at(0, 1)) <= 1e-15);
    CHECK(no_coh.matrix().at(0, 0).real() == doctest::Approx(0.5));

    const DensityMatrix mid = reduced_signal_state(ZwmConfig(ObjectSplitter::from_amplitude(0.6)));
    CHECK(std::abs(mid.matrix().at(0, 1)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("reduced_signal_state matches the traced joint state") {
    Xorshift64Star rng(43);
    for (int trial = 0; trial < 500; ++trial) {
        const ObjectSplitter s = random_splitter(rng);
        const double phase = 6.28 * rng.next_unit();
        const double p1 = rng.next_unit();
        const ZwmConfig config(s, phase, Complex(1.0, 0.0), Priors(p1, 1.0 - p1));
        const auto [phi_a, phi_b] = marker_states(s);
        const ComplexMatrix oracle = traced_signal_oracle(phi_a, phi_b, p1, phase);
        const ComplexMatrix got = reduced_signal_state(config).matrix();
        CHECK((got - oracle).max_abs() <= 1e-12);
        // coherence is bounded by sqrt(p1 p2)
        CHECK(std::abs(got.at(0, 1)) <= std::sqrt(p1 * (1.0 - p1)) + 1e-12);
    }
}

TEST_CASE("general marker visibility") {
    CHECK(general_marker_visibility(Priors::equal(), Complex(1.0, 0.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(general_marker_visibility(Priors::equal(), Complex(0.6, 0.0)) ==
          doctest::Approx(0.6).epsilon(1e-12));

    // eta = (0.25, 0.75): oracle reads 2 |rho_01| off the explicit rho_S
    const Priors priors(0.25, 0.75);
    ComplexMatrix rho(2);
    rho.at(0, 0) = 0.25;
    rho.at(1, 1) = 0.75;
    rho.at(0, 1) = std::sqrt(0.25 * 0.75) * std::conj(Complex(0.6, 0.0));
    rho.at(1, 0) = std::conj(rho.at(0, 1));
    const double oracle = 2.0 * std::abs(rho.at(0, 1));
    CHECK(general_marker_visibility(priors, Complex(0.6, 0.0)) ==
          doctest::Approx(oracle).epsilon(1e-12));
    CHECK(general_marker_visibility(priors, Complex(0.6, 0.0)) ==
          doctest::Approx(0.519615).epsilon(1e-6));
}

TEST_CASE("general marker distinguishability") {
    CHECK(general_marker_distinguishability(Priors::equal(), Complex(0.0, 0.0)) ==
          doctest::Approx(1.0));
    CHECK(general_marker_distinguishability(Priors::equal(), Complex(0.6, 0.0)) ==
          doctest::Approx(0.8).epsilon(1e-12));
    CHECK(general_marker_distinguishability(Priors(0.25, 0.75), Complex(0.6, 0.0)) ==
          doctest::Approx(std::sqrt(1.0 - 0.27)).epsilon(1e-12));
}

TEST_CASE("general formulas: complementarity and prior-swap invariance") {
    Xorshift64Star rng(47);
    for (int trial = 0; trial < 1000; ++trial) {
        const double p1 = rng.next_unit();
        const Priors priors(p1, 1.0 - p1);
        const Priors swapped(1.0 - p1, p1);
        const Complex gamma = std::polar(rng.next_unit(), 6.28 * rng.next_unit());
        const double v = general_marker_visibility(priors, gamma);
        const double d = general_marker_distinguishability(priors, gamma);
        CHECK(std::abs(v * v + d * d - 1.0) <= 1e-12);
        CHECK(general_marker_visibility(swapped, gamma) == doctest::Approx(v).epsilon(1e-14));
        CHECK(general_marker_distinguishability(swapped, gamma) ==
              doctest::Approx(d).epsilon(1e-14));
    }
}

TEST_CASE("marker states stay normalized over a million random splitters") {
    Xorshift64Star rng(53);
    double worst = 0.0;
    for (int trial = 0; trial < 1000000; ++trial) {
        const ObjectSplitter s = random_splitter(rng);
        const auto [phi_a, phi_b] = marker_states(s);
        double n2 = 0.0;
        for (int i = 0; i < 2; ++i) n2 += std::norm(phi_a[i]);
        worst = std::max(worst, std::abs(std::sqrt(n2) - 1.0));
        (void)phi_b;
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("phase convention") {
    const PureState s = phase_fixed(PureState({Complex(0.0, 0.0), Complex(0.0, -1.0)}));
    CHECK(s[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(s[1].imag()) <= 1e-15);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(Priors(0.3, 0.6), Error);
    CHECK_THROWS_AS(Priors(-0.1, 1.1), Error);
    CHECK_THROWS_AS(ObjectSplitter(Complex(1.0, 0.0), Complex(0.5, 0.0)), Error);
    CHECK_THROWS_AS(PureState({Complex(0.5, 0.0), Complex(0.5, 0.0)}), Error);
    CHECK_THROWS_AS(ZwmConfig(ObjectSplitter::from_amplitude(0.5), 0.0, Complex(1.5, 0.0)),
                    Error);
}

TEST_SUITE_END();
