// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "zwm/helstrom.hpp"
#include "zwm/rng.hpp"
#include "zwm/smallmat.hpp"
#include "zwm/zwm_model.hpp"

namespace zwm {

/// Truth-labeled photon-counting tallies from one simulated run.
struct CountRecord {
    long long n_a = 0;      // clicks at the conclusive-A detector (N1)
    long long n_b = 0;      // clicks at the conclusive-B detector (N2)
    long long n_inc = 0;    // clicks at the inconclusive detector (N0)
    long long n_total = 0;
    long long truth_a = 0;  // shots where hypothesis A was prepared
    long long errors_a = 0; // truth A, conclusive-B click
    long long errors_b = 0; // truth B, conclusive-A click
};

CountRecord merge(const CountRecord& x, const CountRecord& y);

struct ShotConfig {
    Povm povm;
    Priors priors;
    DensityMatrix rho_a;
    DensityMatrix rho_b;
    long long n_shots;
    std::uint64_t seed;
    /// optional pre-measurement loss folded into the inconclusive outcome
    double loss = 0.0;
};

/// Per shot: the hypothesis is drawn from the priors, then the outcome by
/// inverse CDF over the POVM probabilities in element order (A, B, inc).
/// Probabilities are validated (>= -1e-10), values within 1e-12 of zero are
/// clamped to exact zero, and the set is renormalized; a zero-probability
/// outcome is never selected, for any seed.
CountRecord simulate_counts(const ShotConfig& config);

struct ProbabilityEstimates {
    double p_suc_hat = 0.0;
    double p_inc_hat = 0.0;
    double se_suc = 0.0;  // binomial standard errors
    double se_inc = 0.0;
};

ProbabilityEstimates estimate_probabilities(const CountRecord& counts);

/// Conditional empirical rates per truth label. Labels with zero shots are
/// flagged undefined rather than reported as zero.
struct ConfusionMatrix {
    bool defined_a = false;
    bool defined_b = false;
    double p_a_given_a = 0.0;
    double p_b_given_b = 0.0;
    double p_inc_given_a = 0.0;
    double p_inc_given_b = 0.0;
    double p_err_given_a = 0.0;
    double p_err_given_b = 0.0;
    double empirical_bayes_error = 0.0;
};

ConfusionMatrix confusion_matrix(const CountRecord& counts);

/// CSV line `seed,n_shots,t,n_a,n_b,n_inc,errors_a,errors_b`.
std::string count_record_csv_line(const CountRecord& counts, std::uint64_t seed,
                                  long long n_shots, double t_amp);

}  // namespace zwm
