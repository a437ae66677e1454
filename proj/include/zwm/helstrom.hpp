// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "zwm/smallmat.hpp"
#include "zwm/zwm_model.hpp"

namespace zwm {

// Outcomes of a discrimination measurement. The artifact standardizes on
// (A, B) with priors (p1, p2): outcome A declares "crystal A fired".
enum class Outcome { ConclusiveA, ConclusiveB, Inconclusive };

/// Ordered list of PSD elements summing to identity, with outcome labels.
class Povm {
public:
    Povm(std::vector<ComplexMatrix> elements, std::vector<Outcome> labels);

    int size() const { return static_cast<int>(elements_.size()); }
    int dim() const { return elements_.front().dim(); }
    const ComplexMatrix& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
    Outcome label(int i) const { return labels_[static_cast<std::size_t>(i)]; }

private:
    std::vector<ComplexMatrix> elements_;
    std::vector<Outcome> labels_;
};

struct HelstromSolution {
    ComplexMatrix delta;        // p1 rho_A - p2 rho_B
    double p_err_min = 0.0;
    double p_suc_max = 0.0;
    Povm povm;                  // {Pi_A, Pi_B}
    double theta = 0.0;         // dim-2 eigenbasis mixing angle (0 otherwise)
    double phi_angle = 0.0;     // dim-2 eigenbasis relative phase
    bool measurement_arbitrary = false;  // Delta = 0: any measurement is optimal
};

/// Helstrom operator p1 rho_a - p2 rho_b.
ComplexMatrix helstrom_operator(const Priors& priors, const DensityMatrix& rho_a,
                                const DensityMatrix& rho_b);

/// Minimum-error solution: p_err_min = (1 - ||Delta||_1) / 2 with the optimal
/// projective POVM onto the nonnegative (outcome A) and negative eigenspaces
/// of Delta. Zero eigenvalues are assigned to outcome A.
HelstromSolution helstrom_bound(const Priors& priors, const DensityMatrix& rho_a,
                                const DensityMatrix& rho_b);

/// Closed form (1 - sqrt(1 - 4 p1 p2 s^2)) / 2 for two pure states with
/// overlap magnitude s.
double pure_state_error(const Priors& priors, double s);

struct DecisionProbabilities {
    double p_error_given_a;  // Tr(Pi_B rho_A)
    double p_error_given_b;  // Tr(Pi_A rho_B)
    double bayes_error;      // p1 * first + p2 * second
};

DecisionProbabilities decision_probabilities(const Povm& povm, const Priors& priors,
                                             const DensityMatrix& rho_a,
                                             const DensityMatrix& rho_b);

/// Optimal measurement eigenbasis for the equal-prior pure ZWM markers:
/// omega_+ = (cos(theta/2), e^{-i phi} sin(theta/2)) with cos(theta) = |r|,
/// sin(theta) = |t|, phi = arg(r conj(t)). With r = 0 the operator vanishes
/// and the computational basis is returned (any measurement is optimal).
std::pair<PureState, PureState> helstrom_povm_angles(const ObjectSplitter& splitter);

}  // namespace zwm
