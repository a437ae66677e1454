// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "zwm/helstrom.hpp"
#include "zwm/oracle.hpp"
#include "zwm/usd_idp.hpp"

using namespace zwm;

namespace {

std::pair<DensityMatrix, DensityMatrix> marker_densities(double t) {
    const auto [phi_a, phi_b] = marker_states(ObjectSplitter::from_amplitude(t));
    return {density_from_pure(phi_a), density_from_pure(phi_b)};
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("brute_force_min_error certifies the closed form") {
    const GridSpec grid{401, 4, 0.1};

    const auto [o_a, o_b] = marker_densities(0.0);
    CHECK(brute_force_min_error(o_a, o_b, Priors::equal(), grid).best_error <= 1e-10);

    const auto [rho_a, rho_b] = marker_densities(0.6);
    const MinErrorSearch mid = brute_force_min_error(rho_a, rho_b, Priors::equal(), grid);
    CHECK(std::abs(mid.best_error - 0.1) <= 1e-8);

    const MinErrorSearch skew = brute_force_min_error(rho_a, rho_b, Priors(0.25, 0.75), grid);
    CHECK(std::abs(skew.best_error - 0.5 * (1.0 - std::sqrt(0.73))) <= 1e-8);

    // the found measurement reproduces its own error through the Bayes rule
    const Povm povm = min_error_measurement(mid);
    const DecisionProbabilities dp = decision_probabilities(povm, Priors::equal(), rho_a, rho_b);
    CHECK(dp.bayes_error == doctest::Approx(mid.best_error).epsilon(1e-12));
}

TEST_CASE("brute_force_min_error with the default grid") {
    const GridSpec grid{};  // 2001 x 2001, 4 rounds, shrink 0.1
    const auto [rho_a, rho_b] = marker_densities(0.6);
    const MinErrorSearch search = brute_force_min_error(rho_a, rho_b, Priors::equal(), grid);
    CHECK(std::abs(search.best_error - 0.1) <= 1e-8);
}

TEST_CASE("min-error oracle agreement over a priors-overlap grid") {
    const GridSpec grid{201, 4, 0.1};
    for (int i = 0; i <= 4; ++i) {
        const double p1 = 0.1 + 0.2 * i;
        const Priors priors(p1, 1.0 - p1);
        for (int j = 0; j <= 4; ++j) {
            const double s = 0.25 * j;
            const auto [rho_a, rho_b] = marker_densities(s);
            const MinErrorSearch search = brute_force_min_error(rho_a, rho_b, priors, grid);
            CHECK(std::abs(search.best_error - pure_state_error(priors, s)) <= 1e-8);
        }
    }
}

TEST_CASE("trivial projectors win when one hypothesis is certain") {
    const GridSpec grid{101, 2, 0.1};
    const auto [rho_a, rho_b] = marker_densities(0.9);
    const MinErrorSearch search = brute_force_min_error(rho_a, rho_b, Priors(1.0, 0.0), grid);
    CHECK(search.best_error <= 1e-10);
}

TEST_CASE("brute_force_usd certifies the symmetric optimum") {
    const GridSpec grid{401, 8, 0.1};

    const UsdSearch perfect = brute_force_usd(ObjectSplitter::from_amplitude(0.0),
                                              Priors::equal(), grid);
    CHECK(perfect.best_success == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(perfect.best_alpha == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(perfect.best_beta == doctest::Approx(1.0).epsilon(1e-8));

    const UsdSearch mid = brute_force_usd(ObjectSplitter::from_amplitude(0.6),
                                          Priors::equal(), grid);
    CHECK(std::abs(mid.best_success - 0.4) <= 1e-8);
    CHECK(std::abs(mid.best_alpha - 0.625) <= 1e-6);
    CHECK(std::abs(mid.best_beta - 0.625) <= 1e-6);

    // ground truth for the unequal-prior branch flag: at eta_1 = 0.25 the
    // search leaves the symmetric branch and suppresses outcome A
    const UsdSearch skew = brute_force_usd(ObjectSplitter::from_amplitude(0.6),
                                           Priors(0.25, 0.75), grid);
    CHECK(skew.best_success == doctest::Approx(0.48).epsilon(1e-8));
    CHECK(skew.best_alpha <= 1e-6);
    CHECK(skew.best_beta == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("usd oracle agreement across the overlap range") {
    const GridSpec grid{201, 8, 0.1};
    for (int j = 0; j <= 20; ++j) {
        const double s = static_cast<double>(j) / 20.0;
        const UsdSearch search =
            brute_force_usd(ObjectSplitter::from_amplitude(s), Priors::equal(), grid);
        CHECK(std::abs(search.best_success - (1.0 - s)) <= 1e-8);
    }
}

TEST_CASE("searches are deterministic") {
    const GridSpec grid{201, 3, 0.1};
    const auto [rho_a, rho_b] = marker_densities(0.37);
    const MinErrorSearch a = brute_force_min_error(rho_a, rho_b, Priors(0.3, 0.7), grid);
    const MinErrorSearch b = brute_force_min_error(rho_a, rho_b, Priors(0.3, 0.7), grid);
    CHECK(a.best_error == b.best_error);
    CHECK(a.theta == b.theta);
    CHECK(a.phi == b.phi);

    const UsdSearch u1 = brute_force_usd(ObjectSplitter::from_amplitude(0.37), Priors(0.3, 0.7),
                                         grid);
    const UsdSearch u2 = brute_force_usd(ObjectSplitter::from_amplitude(0.37), Priors(0.3, 0.7),
                                         grid);
    CHECK(u1.best_success == u2.best_success);
    CHECK(u1.best_alpha == u2.best_alpha);
    CHECK(u1.best_beta == u2.best_beta);
}

TEST_CASE("random_povm validity and determinism") {
    const Povm p42 = random_povm(2, 2, 42);
    CHECK(p42.size() == 2);
    const Povm p42_again = random_povm(2, 2, 42);
    CHECK((p42.element(0) - p42_again.element(0)).max_abs() == 0.0);

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Povm p = random_povm(2, 2 + static_cast<int>(seed % 3), seed);
        ComplexMatrix sum(2);
        for (int i = 0; i < p.size(); ++i) {
            CHECK(psd_check(p.element(i), 1e-10));
            sum += p.element(i);
        }
        CHECK((sum - ComplexMatrix::identity(2)).max_abs() <= 1e-10);
    }
}

TEST_CASE("grid spec validation") {
    const auto [rho_a, rho_b] = marker_densities(0.5);
    CHECK_THROWS_AS(
        brute_force_min_error(rho_a, rho_b, Priors::equal(), GridSpec{2, 1, 0.1}), Error);
    CHECK_THROWS_AS(
        brute_force_min_error(rho_a, rho_b, Priors::equal(), GridSpec{101, 1, 1.5}), Error);
    CHECK_THROWS_AS(random_povm(2, 1, 5), Error);
}

TEST_SUITE_END();
