// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "zwm/helstrom.hpp"
#include "zwm/smallmat.hpp"
#include "zwm/zwm_model.hpp"

namespace zwm {

/// Grid search configuration: a full-resolution scan followed by
/// refinement_rounds scans of windows shrunk by shrink_factor around the
/// incumbent. Scans are serial with strict-improvement updates, so results
/// are deterministic (lowest-index tie-break).
struct GridSpec {
    int resolution = 2001;
    int refinement_rounds = 4;
    double shrink_factor = 0.1;
};

struct MinErrorSearch {
    double best_error = 0.0;
    double theta = 0.0;  // Bloch polar angle of the outcome-A projector
    double phi = 0.0;    // Bloch azimuth
    bool trivial_projector = false;  // best measurement is {1,0} or {0,1}
};

/// Brute-force minimization of the Bayes error over projective measurements
/// {|v><v|, 1 - |v><v|} with v = (cos(theta/2), e^{i phi} sin(theta/2)),
/// plus the two trivial always-guess measurements. Independent of the
/// closed-form path it certifies.
MinErrorSearch brute_force_min_error(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                     const Priors& priors, const GridSpec& grid);

/// Builds the 2-outcome POVM for a search result. For trivial results,
/// theta = 0 marks always-guess-A ({1, 0}), theta = pi always-guess-B.
Povm min_error_measurement(const MinErrorSearch& search);

struct UsdSearch {
    double best_success = 0.0;
    double best_alpha = 0.0;
    double best_beta = 0.0;
};

/// Brute-force maximization of P_S = (p1 alpha + p2 beta) |r|^2 over the
/// IDP positivity region.
UsdSearch brute_force_usd(const ObjectSplitter& splitter, const Priors& priors,
                          const GridSpec& grid);

/// Random valid POVM from Wishart factors, deterministic for a fixed seed.
/// Outcome 0 is labeled A, outcome 1 B, the rest inconclusive.
Povm random_povm(int dim, int outcomes, std::uint64_t seed);

}  // namespace zwm
