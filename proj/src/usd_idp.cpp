// SPDX-License-Identifier: Apache-2.0
#include "zwm/usd_idp.hpp"

#include <algorithm>
#include <cmath>

namespace zwm {

Povm IdpPovm::as_povm() const {
    return Povm({pi_a, pi_b, pi_inc},
                {Outcome::ConclusiveA, Outcome::ConclusiveB, Outcome::Inconclusive});
}

PureState orthogonal_complement(const PureState& psi) {
    if (psi.dim() != 2) throw DimensionError("orthogonal_complement: dim must be 2");
    PureState perp({std::conj(psi[1]), -std::conj(psi[0])});
    return phase_fixed(perp);
}

PositivityDiagnostics positivity_region(const ObjectSplitter& splitter, double alpha,
                                        double beta) {
    const double t2 = std::norm(splitter.t());
    const double r2 = std::norm(splitter.r());
    PositivityDiagnostics d;
    d.diag_a = 1.0 - alpha - beta * t2;
    d.diag_b = 1.0 - beta * r2;
    d.determinant = d.diag_a * d.diag_b - beta * beta * t2 * r2;
    d.positive = d.diag_a >= -1e-12 && d.diag_b >= -1e-12 && d.determinant >= -1e-12;
    return d;
}

IdpPovm idp_povm(const ObjectSplitter& splitter, double alpha, double beta) {
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0)
        throw Error("idp_povm: alpha, beta must lie in [0, 1]");
    const auto [phi_a, phi_b] = marker_states(splitter);
    const PureState perp_b = orthogonal_complement(phi_b);
    const PureState perp_a = orthogonal_complement(phi_a);

    IdpPovm povm;
    povm.alpha = alpha;
    povm.beta = beta;
    povm.pi_a = outer_product(perp_b);
    povm.pi_a *= Complex(alpha, 0.0);
    povm.pi_b = outer_product(perp_a);
    povm.pi_b *= Complex(beta, 0.0);
    povm.pi_inc = ComplexMatrix::identity(2) - povm.pi_a - povm.pi_b;

    const EigenSystem sys = hermitian_eig(povm.pi_inc);
    if (sys.eigenvalues.front() < -kPsdTol)
        throw PositivityError("idp_povm: Pi_inc not PSD, min eigenvalue " +
                                  std::to_string(sys.eigenvalues.front()),
                              sys.eigenvalues.front());
    return povm;
}

IdpOptimum optimal_idp(const ObjectSplitter& splitter) {
    const double s = std::abs(splitter.t());
    const double coeff = 1.0 / (1.0 + s);
    IdpOptimum opt{idp_povm(splitter, coeff, coeff), 1.0 - s, s};
    return opt;
}

IdpProbabilities idp_probabilities(const IdpPovm& povm, const DensityMatrix& rho_a,
                                   const DensityMatrix& rho_b, const Priors& priors) {
    if (rho_a.dim() != 2 || rho_b.dim() != 2)
        throw DimensionError("idp_probabilities: states must be dim 2");
    const auto conclusive = [&](const DensityMatrix& rho) {
        return std::clamp(trace_product(povm.pi_a, rho.matrix()).real() +
                              trace_product(povm.pi_b, rho.matrix()).real(),
                          0.0, 1.0);
    };
    IdpProbabilities p{};
    p.p_conclusive_given_a = conclusive(rho_a);
    p.p_conclusive_given_b = conclusive(rho_b);
    p.q_a = std::clamp(trace_product(povm.pi_inc, rho_a.matrix()).real(), 0.0, 1.0);
    p.q_b = std::clamp(trace_product(povm.pi_inc, rho_b.matrix()).real(), 0.0, 1.0);
    p.q_avg = priors.p1 * p.q_a + priors.p2 * p.q_b;
    return p;
}

SymmetricBranch symmetric_branch_inconclusive(const Priors& priors, Complex gamma) {
    const double s = std::abs(gamma);
    if (s > 1.0 + 1e-12) throw Error("symmetric_branch_inconclusive: |gamma| > 1");

    SymmetricBranch out;
    out.value = 2.0 * std::sqrt(priors.p1 * priors.p2) * s;
    if (s <= 1e-15) {
        out.branch_valid = true;
        out.alpha = out.beta = 1.0;
        return out;
    }
    if (priors.p1 <= 0.0 || priors.p2 <= 0.0) {
        out.branch_valid = false;
        return out;
    }
    // symmetric-branch failure rates q_A = sqrt(p2/p1) s, q_B = sqrt(p1/p2) s
    const double q_a = std::sqrt(priors.p2 / priors.p1) * s;
    const double q_b = std::sqrt(priors.p1 / priors.p2) * s;
    if (q_a > 1.0 + 1e-12 || q_b > 1.0 + 1e-12) {
        out.branch_valid = false;
        return out;
    }
    if (s >= 1.0 - 1e-15) {
        // identical markers at equal priors: never conclusive, any coefficients work
        out.branch_valid = true;
        out.alpha = out.beta = 0.0;
        return out;
    }
    const double r2 = 1.0 - s * s;
    const double alpha = std::clamp((1.0 - q_a) / r2, 0.0, 1.0);
    const double beta = std::clamp((1.0 - q_b) / r2, 0.0, 1.0);
    const ObjectSplitter canonical = ObjectSplitter::from_amplitude(s);
    const PositivityDiagnostics diag = positivity_region(canonical, alpha, beta);
    out.branch_valid = diag.positive;
    out.alpha = alpha;
    out.beta = beta;
    return out;
}

// Gram-Schmidt with deterministic completion from the computational basis.
static std::vector<std::vector<Complex>> orthonormalize(
    const std::vector<std::vector<Complex>>& inputs) {
    const std::size_t dim = inputs.front().size();
    std::vector<std::vector<Complex>> basis;
    auto project_out = [&](std::vector<Complex> v) {
        for (const auto& b : basis) {
            Complex coeff = 0.0;
            for (std::size_t i = 0; i < dim; ++i) coeff += std::conj(b[i]) * v[i];
            for (std::size_t i = 0; i < dim; ++i) v[i] -= coeff * b[i];
        }
        return v;
    };
    auto norm_of = [&](const std::vector<Complex>& v) {
        double n2 = 0.0;
        for (const Complex& x : v) n2 += std::norm(x);
        return std::sqrt(n2);
    };
    auto try_add = [&](std::vector<Complex> v) {
        v = project_out(std::move(v));
        const double n = norm_of(v);
        if (n < 1e-10) return false;
        for (Complex& x : v) x /= n;
        basis.push_back(std::move(v));
        return true;
    };
    for (const auto& v : inputs) try_add(v);
    for (std::size_t k = 0; k < dim && basis.size() < dim; ++k) {
        std::vector<Complex> e(dim, 0.0);
        e[k] = 1.0;
        try_add(std::move(e));
    }
    return basis;
}

IdpUnitary idp_unitary(double s) {
    if (s < 0.0 || s > 1.0) throw Error("idp_unitary: overlap outside [0, 1]");
    const double r = std::sqrt(std::max(0.0, 1.0 - s * s));
    const double p = 1.0 - s;
    const double q = s;

    // inputs phi_j (x) |0_C> and prescribed outputs in the basis {|100>, |010>, |001>}
    const std::vector<std::vector<Complex>> vin = {{r, s, 0.0}, {0.0, 1.0, 0.0}};
    const std::vector<std::vector<Complex>> vout = {{std::sqrt(p), 0.0, std::sqrt(q)},
                                                    {0.0, std::sqrt(p), std::sqrt(q)}};
    const auto bin = orthonormalize(vin);
    const auto bout = orthonormalize(vout);
    if (bin.size() != 3 || bout.size() != 3)
        throw Error("idp_unitary: orthonormal completion failed");

    ComplexMatrix u(3);
    for (std::size_t k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                u.at(i, j) += bout[k][static_cast<std::size_t>(i)] *
                              std::conj(bin[k][static_cast<std::size_t>(j)]);

    return IdpUnitary{std::move(u), p, p, q, q};
}

}  // namespace zwm
