// SPDX-License-Identifier: Apache-2.0
#include "zwm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zwm/rng.hpp"
#include "zwm/usd_idp.hpp"

namespace zwm {

namespace {

void validate_grid(const GridSpec& grid) {
    if (grid.resolution < 3) throw Error("GridSpec: resolution must be >= 3");
    if (grid.refinement_rounds < 0) throw Error("GridSpec: refinement rounds must be >= 0");
    if (!(grid.shrink_factor > 0.0 && grid.shrink_factor < 1.0))
        throw Error("GridSpec: shrink factor must lie in (0, 1)");
}

// window of width <= w centered at c, clipped into [lo, hi]
std::pair<double, double> clipped_window(double c, double w, double lo, double hi) {
    const double width = std::min(w, hi - lo);
    double a = c - 0.5 * width;
    a = std::clamp(a, lo, hi - width);
    return {a, a + width};
}

}  // namespace

MinErrorSearch brute_force_min_error(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                     const Priors& priors, const GridSpec& grid) {
    validate_grid(grid);
    if (rho_a.dim() != 2 || rho_b.dim() != 2)
        throw DimensionError("brute_force_min_error: states must be dim 2");

    const double a00 = rho_a.matrix().at(0, 0).real();
    const double a11 = rho_a.matrix().at(1, 1).real();
    const Complex a01 = rho_a.matrix().at(0, 1);
    const double b00 = rho_b.matrix().at(0, 0).real();
    const double b11 = rho_b.matrix().at(1, 1).real();
    const Complex b01 = rho_b.matrix().at(0, 1);

    // Bayes error for Pi_A = |v><v|: p1 (1 - <v|rho_A|v>) + p2 <v|rho_B|v>
    const auto bayes_error = [&](double theta, double phi) {
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        const Complex cross = std::polar(1.0, phi);  // v = (c, e^{i phi} s)
        const double ea = a00 * c * c + a11 * s * s + 2.0 * c * s * (a01 * cross).real();
        const double eb = b00 * c * c + b11 * s * s + 2.0 * c * s * (b01 * cross).real();
        return priors.p1 * (1.0 - ea) + priors.p2 * eb;
    };

    constexpr double pi = std::numbers::pi;
    MinErrorSearch best;
    best.best_error = bayes_error(0.0, 0.0);
    best.theta = 0.0;
    best.phi = 0.0;

    double center_theta = 0.5 * pi;
    double center_phi = pi;
    for (int round = 0; round <= grid.refinement_rounds; ++round) {
        const double shrink = std::pow(grid.shrink_factor, round);
        const auto [tlo, thi] = clipped_window(center_theta, pi * shrink, 0.0, pi);
        const auto [plo, phi_hi] = clipped_window(center_phi, 2.0 * pi * shrink, 0.0, 2.0 * pi);
        const double dt = (thi - tlo) / (grid.resolution - 1);
        const double dp = (phi_hi - plo) / (grid.resolution - 1);
        for (int i = 0; i < grid.resolution; ++i) {
            const double theta = tlo + dt * i;
            for (int j = 0; j < grid.resolution; ++j) {
                const double phi = plo + dp * j;
                const double err = bayes_error(theta, phi);
                if (err < best.best_error) {
                    best.best_error = err;
                    best.theta = theta;
                    best.phi = phi;
                }
            }
        }
        center_theta = best.theta;
        center_phi = best.phi;
    }

    // always-guess measurements {1, 0} and {0, 1}
    if (priors.p2 < best.best_error) {
        best.best_error = priors.p2;
        best.trivial_projector = true;
        best.theta = 0.0;
        best.phi = 0.0;
    }
    if (priors.p1 < best.best_error) {
        best.best_error = priors.p1;
        best.trivial_projector = true;
        best.theta = pi;
        best.phi = 0.0;
    }
    return best;
}

Povm min_error_measurement(const MinErrorSearch& search) {
    if (search.trivial_projector) {
        ComplexMatrix pa = ComplexMatrix::identity(2);
        ComplexMatrix pb(2);
        if (search.theta > 1.0) std::swap(pa, pb);  // theta = pi marks always-guess-B
        return Povm({pa, pb}, {Outcome::ConclusiveA, Outcome::ConclusiveB});
    }
    const double c = std::cos(0.5 * search.theta);
    const double s = std::sin(0.5 * search.theta);
    const PureState v({Complex(c, 0.0), std::polar(s, search.phi)});
    ComplexMatrix pa = outer_product(v);
    ComplexMatrix pb = ComplexMatrix::identity(2) - pa;
    return Povm({pa, pb}, {Outcome::ConclusiveA, Outcome::ConclusiveB});
}

UsdSearch brute_force_usd(const ObjectSplitter& splitter, const Priors& priors,
                          const GridSpec& grid) {
    validate_grid(grid);
    const double r2 = std::norm(splitter.r());
    const double t2 = std::norm(splitter.t());

    const auto feasible = [&](double alpha, double beta) {
        const double diag_a = 1.0 - alpha - beta * t2;
        const double diag_b = 1.0 - beta * r2;
        if (diag_a < -1e-12 || diag_b < -1e-12) return false;
        return diag_a * diag_b - beta * beta * t2 * r2 >= -1e-12;
    };
    const auto success = [&](double alpha, double beta) {
        return (priors.p1 * alpha + priors.p2 * beta) * r2;
    };
    // Feasibility is monotone in beta at fixed alpha (the determinant and
    // diagonal conditions are all linear decreasing in beta), so the largest
    // admissible beta can be bisected from the region predicate alone.
    const auto beta_max = [&](double alpha) {
        if (feasible(alpha, 1.0)) return 1.0;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (feasible(alpha, mid) ? lo : hi) = mid;
        }
        return lo;
    };

    // global pass: full 2-D grid filtered by the positivity region
    UsdSearch best;  // alpha = beta = 0 is always feasible with success 0
    const double d0 = 1.0 / (grid.resolution - 1);
    for (int i = 0; i < grid.resolution; ++i) {
        const double alpha = d0 * i;
        for (int j = 0; j < grid.resolution; ++j) {
            const double beta = d0 * j;
            if (!feasible(alpha, beta)) continue;
            const double suc = success(alpha, beta);
            if (suc > best.best_success) {
                best.best_success = suc;
                best.best_alpha = alpha;
                best.best_beta = beta;
            }
        }
    }

    // The optimum sits where the linear objective is tangent to the curved
    // positivity boundary, so 2-D window shrinking can stall on a displaced
    // boundary segment. Refine along the boundary instead: scan alpha, take
    // the bisected beta_max(alpha).
    for (int round = 0; round <= grid.refinement_rounds; ++round) {
        const double shrink = std::pow(grid.shrink_factor, round);
        const auto [alo, ahi] = clipped_window(best.best_alpha, shrink, 0.0, 1.0);
        const double da = (ahi - alo) / (grid.resolution - 1);
        for (int i = 0; i < grid.resolution; ++i) {
            const double alpha = alo + da * i;
            const double beta = beta_max(alpha);
            const double suc = success(alpha, beta);
            if (suc > best.best_success) {
                best.best_success = suc;
                best.best_alpha = alpha;
                best.best_beta = beta;
            }
        }
    }
    return best;
}

Povm random_povm(int dim, int outcomes, std::uint64_t seed) {
    if (outcomes < 2) throw Error("random_povm: need at least 2 outcomes");
    if (dim < 1 || dim > ComplexMatrix::kMaxEigDim)
        throw DimensionError("random_povm: dim outside [1, 64]");

    Xorshift64Star rng(seed);
    const auto gaussian = [&rng]() {
        const double u1 = rng.next_open();
        const double u2 = rng.next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };

    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<ComplexMatrix> wishart;
        ComplexMatrix sum(dim);
        for (int k = 0; k < outcomes; ++k) {
            ComplexMatrix g(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) g.at(i, j) = Complex(gaussian(), gaussian());
            ComplexMatrix a = g * g.adjoint();
            // hermitize away rounding drift
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    const Complex v = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
                    a.at(i, j) = v;
                }
            sum += a;
            wishart.push_back(std::move(a));
        }
        const EigenSystem sys = hermitian_eig(sum);
        if (sys.eigenvalues.front() < 1e-8 * sys.eigenvalues.back()) continue;

        ComplexMatrix inv_sqrt(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                Complex s = 0.0;
                for (int k = 0; k < dim; ++k)
                    s += (1.0 / std::sqrt(sys.eigenvalues[k])) * sys.eigenvectors.at(i, k) *
                         std::conj(sys.eigenvectors.at(j, k));
                inv_sqrt.at(i, j) = s;
            }

        std::vector<ComplexMatrix> elements;
        std::vector<Outcome> labels;
        for (int k = 0; k < outcomes; ++k) {
            ComplexMatrix e = inv_sqrt * wishart[static_cast<std::size_t>(k)] * inv_sqrt;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    const Complex v = 0.5 * (e.at(i, j) + std::conj(e.at(j, i)));
                    e.at(i, j) = v;
                }
            elements.push_back(std::move(e));
            labels.push_back(k == 0   ? Outcome::ConclusiveA
                             : k == 1 ? Outcome::ConclusiveB
                                      : Outcome::Inconclusive);
        }
        return Povm(std::move(elements), std::move(labels));
    }
    throw Error("random_povm: failed to draw a well-conditioned POVM");
}

}  // namespace zwm
