// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "zwm/smallmat.hpp"
#include "zwm/zwm_model.hpp"

namespace zwm {

class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double tail_weight)
        : Error(what), tail_weight(tail_weight) {}
    double tail_weight;
};

struct ThermalState {
    ComplexMatrix matrix;      // diagonal, renormalized to unit trace
    double tail_weight = 0.0;  // probability dropped by the cutoff, pre-renormalization
};

/// Truncated single-mode thermal state, p_n = N^n / (1+N)^{n+1} for
/// n = 0..n_max. Rejects cutoffs whose tail weight reaches 1e-6.
ThermalState thermal_state(double mean_photons, int n_max);

/// Dimension of the two-mode Fock space truncated at total photon number
/// n_total_max, and the index of |n1, n2> in it. Blocks are ordered by
/// ascending total N; within a block states run (N,0), (N-1,1), ..., (0,N).
int fock_pair_dim(int n_total_max);
int fock_pair_index(int n1, int n2);

/// Two-mode beam-splitter unitary on the truncated Fock space, block diagonal
/// in total photon number. Inputs are (idler, environment), outputs
/// (loss port I2, transmitted mode I3); the single-photon block is
/// [[r, t*], [t, -r*]], which for real amplitudes is the (r, t; t, -r) map.
ComplexMatrix beamsplitter_fock(const ObjectSplitter& splitter, int n_max);

struct ThermalConfig {
    ObjectSplitter splitter;
    double mean_photons;  // N_B
    int n_max;            // Fock cutoff for the thermal mode

    ThermalConfig(ObjectSplitter s, double mean_photons_, int n_max_);
};

struct MixedMarkerPair {
    DensityMatrix rho_a;
    DensityMatrix rho_b;
    double visibility = 0.0;  // |sum_n p_n <out_B(n)|out_A(n)>| over thermal branches
    double fidelity = 0.0;    // Uhlmann fidelity of the reduced markers
};

/// Conditional idler markers on the transmitted mode I3 under thermal noise.
///
/// Hypothesis A sends one idler photon plus the thermal mode through the
/// object splitter and traces out the loss port. Hypothesis B bypasses the
/// object: the thermal mode scatters through the same splitter (vacuum at the
/// idler port) and the bypass photon is then created in the transmitted mode,
/// branch by branch; at N_B = 0 this reproduces phi_B = |0,1> exactly.
/// Visibility is the branch-weighted purification overlap, so
/// visibility <= fidelity holds by construction.
MixedMarkerPair conditional_markers_thermal(const ThermalConfig& config);

/// Same computation at an explicit cutoff; used for cutoff-doubling checks.
MixedMarkerPair conditional_markers_at_cutoff(const ObjectSplitter& splitter,
                                              double mean_photons, int n_cut);

struct DualityChain {
    double visibility = 0.0;
    double fidelity = 0.0;
    double p_inc_lower_bound = 0.0;  // fidelity certifies P_inc_opt >= F
    bool chain_holds = false;        // V <= F within 1e-9
};

DualityChain duality_chain(const ThermalConfig& config);

}  // namespace zwm
