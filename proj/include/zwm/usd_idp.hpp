// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "zwm/helstrom.hpp"
#include "zwm/smallmat.hpp"
#include "zwm/zwm_model.hpp"

namespace zwm {

/// Three-outcome unambiguous-discrimination POVM on the two-mode idler
/// subspace: Pi_A = alpha |phi_B-perp><phi_B-perp|, Pi_B = beta
/// |phi_A-perp><phi_A-perp|, Pi_inc fixed by completeness and stored
/// explicitly so completeness stays a checked invariant.
struct IdpPovm {
    ComplexMatrix pi_a;
    ComplexMatrix pi_b;
    ComplexMatrix pi_inc;
    double alpha = 0.0;
    double beta = 0.0;

    Povm as_povm() const;
};

struct PositivityDiagnostics {
    bool positive = false;
    double diag_a = 0.0;       // 1 - alpha - beta |t|^2
    double diag_b = 0.0;       // 1 - beta |r|^2
    double determinant = 0.0;  // det of Pi_inc
};

struct IdpOptimum {
    IdpPovm povm;
    double p_suc_opt = 0.0;
    double p_inc_opt = 0.0;
};

struct IdpProbabilities {
    double p_conclusive_given_a;
    double p_conclusive_given_b;
    double q_a;     // P(inc | A)
    double q_b;     // P(inc | B)
    double q_avg;   // p1 q_a + p2 q_b
};

struct SymmetricBranch {
    double value = 0.0;        // 2 sqrt(p1 p2) |gamma|
    bool branch_valid = false; // symmetric coefficients lie in the positivity region
    double alpha = 0.0;        // constructive coefficients (meaningful when valid)
    double beta = 0.0;
};

/// Three-mode dilation of the symmetric IDP measurement.
struct IdpUnitary {
    ComplexMatrix matrix;  // 3x3
    double p1 = 0.0, p2 = 0.0;  // conclusive amplitudes squared
    double q1 = 0.0, q2 = 0.0;  // inconclusive amplitudes squared
};

/// Unique (up to phase) state orthogonal to a dim-2 state, phase fixed so the
/// first nonzero component is real positive. For phi_A = (r, t) this is
/// (t*, -r*) up to the phase convention.
PureState orthogonal_complement(const PureState& psi);

/// Build the IDP POVM for given conclusive weights; rejects (alpha, beta)
/// outside the positivity region, carrying the min eigenvalue of Pi_inc.
IdpPovm idp_povm(const ObjectSplitter& splitter, double alpha, double beta);

/// Diagonal and determinant conditions for Pi_inc >= 0.
PositivityDiagnostics positivity_region(const ObjectSplitter& splitter, double alpha,
                                        double beta);

/// Symmetric optimum alpha = beta = 1/(1 + |t|): p_suc = 1 - |t|,
/// p_inc = |t| (the overlap s, not the population |t|^2).
IdpOptimum optimal_idp(const ObjectSplitter& splitter);

IdpProbabilities idp_probabilities(const IdpPovm& povm, const DensityMatrix& rho_a,
                                   const DensityMatrix& rho_b, const Priors& priors);

/// Symmetric-branch inconclusive probability 2 sqrt(p1 p2) |gamma| with a
/// constructive validity flag (the coefficients realizing it must lie in the
/// positivity region; outside it the true optimum changes branch).
SymmetricBranch symmetric_branch_inconclusive(const Priors& priors, Complex gamma);

/// Three-mode unitary with U|phi_1, 0_C> = sqrt(1-s)|100> + sqrt(s)|001> and
/// U|phi_2, 0_C> = sqrt(1-s)|010> + sqrt(s)|001>, completed deterministically.
IdpUnitary idp_unitary(double s);

}  // namespace zwm
