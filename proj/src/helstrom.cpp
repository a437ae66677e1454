// SPDX-License-Identifier: Apache-2.0
#include "zwm/helstrom.hpp"

#include <algorithm>
#include <cmath>

namespace zwm {

Povm::Povm(std::vector<ComplexMatrix> elements, std::vector<Outcome> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty()) throw Error("Povm: no elements");
    if (elements_.size() != labels_.size()) throw Error("Povm: element/label count mismatch");
    const int n = elements_.front().dim();
    ComplexMatrix sum(n);
    for (const ComplexMatrix& e : elements_) {
        if (e.dim() != n) throw DimensionError("Povm: mixed element dimensions");
        if (!psd_check(e, kPsdTol)) {
            const EigenSystem sys = hermitian_eig(e);
            throw PositivityError("Povm: element not PSD, min eigenvalue " +
                                      std::to_string(sys.eigenvalues.front()),
                                  sys.eigenvalues.front());
        }
        sum += e;
    }
    sum -= ComplexMatrix::identity(n);
    if (sum.max_abs() > kPsdTol)
        throw Error("Povm: elements do not sum to identity, deviation " +
                    std::to_string(sum.max_abs()));
}

ComplexMatrix helstrom_operator(const Priors& priors, const DensityMatrix& rho_a,
                                const DensityMatrix& rho_b) {
    if (rho_a.dim() != rho_b.dim())
        throw DimensionError("helstrom_operator: dimension mismatch");
    ComplexMatrix delta = rho_a.matrix();
    delta *= Complex(priors.p1, 0.0);
    ComplexMatrix nb = rho_b.matrix();
    nb *= Complex(priors.p2, 0.0);
    delta -= nb;
    return delta;
}

HelstromSolution helstrom_bound(const Priors& priors, const DensityMatrix& rho_a,
                                const DensityMatrix& rho_b) {
    ComplexMatrix delta = helstrom_operator(priors, rho_a, rho_b);
    const int n = delta.dim();

    if (delta.frobenius_norm() <= 1e-14) {
        // identical weighted states: any measurement is optimal; fix the
        // computational basis for determinism
        std::vector<ComplexMatrix> elems;
        ComplexMatrix pa(n), pb(n);
        pa.at(0, 0) = 1.0;
        for (int i = 1; i < n; ++i) pb.at(i, i) = 1.0;
        elems.push_back(pa);
        elems.push_back(pb);
        Povm povm(std::move(elems), {Outcome::ConclusiveA, Outcome::ConclusiveB});
        return HelstromSolution{std::move(delta), 0.5, 0.5, std::move(povm), 0.0, 0.0, true};
    }

    const EigenSystem sys = hermitian_eig(delta);
    double norm1 = 0.0;
    for (double l : sys.eigenvalues) norm1 += std::abs(l);

    ComplexMatrix pa(n);
    for (int k = 0; k < n; ++k) {
        if (sys.eigenvalues[k] < 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                pa.at(i, j) += sys.eigenvectors.at(i, k) * std::conj(sys.eigenvectors.at(j, k));
    }
    ComplexMatrix pb = ComplexMatrix::identity(n) - pa;
    // scrub tiny negative ripples so the Povm validator sees clean projectors
    for (int i = 0; i < n; ++i) {
        pa.at(i, i) = Complex(std::clamp(pa.at(i, i).real(), 0.0, 1.0), 0.0);
        pb.at(i, i) = Complex(std::clamp(pb.at(i, i).real(), 0.0, 1.0), 0.0);
    }

    double theta = 0.0, phi_angle = 0.0;
    if (n == 2) {
        // omega_+ is the top eigenvector; phases already fixed by hermitian_eig
        const Complex v0 = sys.eigenvectors.at(0, 1);
        const Complex v1 = sys.eigenvectors.at(1, 1);
        theta = 2.0 * std::atan2(std::abs(v1), std::abs(v0));
        if (std::abs(v1) > 1e-12 && std::abs(v0) > 1e-12)
            phi_angle = -std::arg(v1 / v0);
    }

    const double p_err = std::clamp(0.5 * (1.0 - norm1), 0.0, 0.5);
    Povm povm({pa, pb}, {Outcome::ConclusiveA, Outcome::ConclusiveB});
    return HelstromSolution{std::move(delta), p_err,       1.0 - p_err,
                            std::move(povm),  theta,       phi_angle,
                            false};
}

double pure_state_error(const Priors& priors, double s) {
    if (s < 0.0 || s > 1.0) throw Error("pure_state_error: overlap outside [0, 1]");
    const double inside = 1.0 - 4.0 * priors.p1 * priors.p2 * s * s;
    return 0.5 * (1.0 - std::sqrt(std::max(0.0, inside)));
}

DecisionProbabilities decision_probabilities(const Povm& povm, const Priors& priors,
                                             const DensityMatrix& rho_a,
                                             const DensityMatrix& rho_b) {
    if (povm.size() != 2) throw Error("decision_probabilities: POVM must have two outcomes");
    if (povm.dim() != rho_a.dim() || rho_a.dim() != rho_b.dim())
        throw DimensionError("decision_probabilities: dimension mismatch");
    const ComplexMatrix& pi_a = povm.element(0);
    const ComplexMatrix& pi_b = povm.element(1);
    const double p_err_a = std::clamp(trace_product(pi_b, rho_a.matrix()).real(), 0.0, 1.0);
    const double p_err_b = std::clamp(trace_product(pi_a, rho_b.matrix()).real(), 0.0, 1.0);
    return {p_err_a, p_err_b, priors.p1 * p_err_a + priors.p2 * p_err_b};
}

std::pair<PureState, PureState> helstrom_povm_angles(const ObjectSplitter& splitter) {
    const double r_abs = std::abs(splitter.r());
    const double t_abs = std::abs(splitter.t());
    if (r_abs < 1e-12) {
        // degenerate markers; measurement arbitrary, return the computational basis
        PureState plus({Complex(1.0, 0.0), Complex(0.0, 0.0)});
        PureState minus({Complex(0.0, 0.0), Complex(1.0, 0.0)});
        return {plus, minus};
    }
    const double theta = std::atan2(t_abs, r_abs);
    const Complex rt = splitter.r() * std::conj(splitter.t());
    const double phi = (std::abs(rt) > 0.0) ? std::arg(rt) : 0.0;
    const Complex ephi = std::polar(1.0, -phi);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    PureState plus({Complex(c, 0.0), ephi * s});
    PureState minus({Complex(s, 0.0), -ephi * c});
    return {phase_fixed(plus), phase_fixed(minus)};
}

}  // namespace zwm
