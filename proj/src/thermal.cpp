// SPDX-License-Identifier: Apache-2.0
#include "zwm/thermal.hpp"

#include <cmath>
#include <vector>

namespace zwm {

namespace {

constexpr double kTailGuard = 1e-6;
constexpr int kMaxCutoff = 60;

double thermal_weight(double nbar, int n) {
    // N^n / (1+N)^{n+1}, evaluated multiplicatively
    double w = 1.0 / (1.0 + nbar);
    const double ratio = nbar / (1.0 + nbar);
    for (int k = 0; k < n; ++k) w *= ratio;
    return w;
}

// Apply (x b1^dag + y b2^dag) to a total-photon-m block vector indexed by the
// occupation of mode 2, producing a block-(m+1) vector.
std::vector<Complex> apply_ladder(const std::vector<Complex>& v, int m, Complex x, Complex y) {
    std::vector<Complex> out(static_cast<std::size_t>(m) + 2, Complex(0.0, 0.0));
    for (int j = 0; j <= m; ++j) {
        const Complex c = v[static_cast<std::size_t>(j)];
        if (c == Complex(0.0, 0.0)) continue;
        out[static_cast<std::size_t>(j)] += x * std::sqrt(double(m - j + 1)) * c;
        out[static_cast<std::size_t>(j) + 1] += y * std::sqrt(double(j + 1)) * c;
    }
    return out;
}

double vec_norm(const std::vector<Complex>& v) {
    double n2 = 0.0;
    for (const Complex& c : v) n2 += std::norm(c);
    return std::sqrt(n2);
}

// U |n1, n2> as a block-(n1+n2) vector: ladder operators applied to vacuum,
// normalized by sqrt(n1! n2!).
std::vector<Complex> scatter_fock(const ObjectSplitter& s, int n1, int n2) {
    const Complex x_i = s.r(), y_i = s.t();                          // idler input column
    const Complex x_e = std::conj(s.t()), y_e = -std::conj(s.r());   // environment column
    std::vector<Complex> v{Complex(1.0, 0.0)};
    int m = 0;
    for (int k = 0; k < n2; ++k) v = apply_ladder(v, m++, x_e, y_e);
    for (int k = 0; k < n1; ++k) v = apply_ladder(v, m++, x_i, y_i);
    double fact = 1.0;
    for (int k = 2; k <= n1; ++k) fact *= k;
    for (int k = 2; k <= n2; ++k) fact *= k;
    const double scale = 1.0 / std::sqrt(fact);
    for (Complex& c : v) c *= scale;
    return v;
}

}  // namespace

ThermalState thermal_state(double mean_photons, int n_max) {
    if (mean_photons < 0.0) throw Error("thermal_state: mean photon number < 0");
    if (n_max < 1 || n_max > kMaxCutoff)
        throw Error("thermal_state: n_max outside [1, " + std::to_string(kMaxCutoff) + "]");
    std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
    double kept = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        p[static_cast<std::size_t>(n)] = thermal_weight(mean_photons, n);
        kept += p[static_cast<std::size_t>(n)];
    }
    const double tail = std::max(0.0, 1.0 - kept);
    if (tail >= kTailGuard)
        throw TruncationError("thermal_state: truncation tail " + std::to_string(tail) +
                                  " >= 1e-6, increase n_max",
                              tail);
    ThermalState out;
    out.tail_weight = tail;
    out.matrix = ComplexMatrix(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        out.matrix.at(n, n) = Complex(p[static_cast<std::size_t>(n)] / kept, 0.0);
    return out;
}

int fock_pair_dim(int n_total_max) { return (n_total_max + 1) * (n_total_max + 2) / 2; }

int fock_pair_index(int n1, int n2) {
    const int total = n1 + n2;
    return total * (total + 1) / 2 + n2;
}

ComplexMatrix beamsplitter_fock(const ObjectSplitter& splitter, int n_max) {
    if (n_max < 0 || fock_pair_dim(n_max) > ComplexMatrix::kMaxDim)
        throw DimensionError("beamsplitter_fock: cutoff too large");
    ComplexMatrix u(fock_pair_dim(n_max));
    for (int total = 0; total <= n_max; ++total) {
        for (int n2 = 0; n2 <= total; ++n2) {
            const int n1 = total - n2;
            const std::vector<Complex> col = scatter_fock(splitter, n1, n2);
            const int col_index = fock_pair_index(n1, n2);
            for (int j = 0; j <= total; ++j)
                u.at(fock_pair_index(total - j, j), col_index) = col[static_cast<std::size_t>(j)];
        }
    }
    return u;
}

ThermalConfig::ThermalConfig(ObjectSplitter s, double mean_photons_, int n_max_)
    : splitter(s), mean_photons(mean_photons_), n_max(n_max_) {
    if (n_max < 1 || n_max > kMaxCutoff)
        throw Error("ThermalConfig: n_max outside [1, " + std::to_string(kMaxCutoff) + "]");
    thermal_state(mean_photons, n_max);  // enforce the tail guard at construction
}

MixedMarkerPair conditional_markers_at_cutoff(const ObjectSplitter& splitter,
                                              double mean_photons, int n_cut) {
    const ThermalState th = thermal_state(mean_photons, n_cut);

    // markers live on the transmitted mode, occupations 0..n_cut+1
    const int marker_dim = n_cut + 2;
    ComplexMatrix rho_a(marker_dim), rho_b(marker_dim);
    Complex vis_sum = 0.0;

    for (int n = 0; n <= n_cut; ++n) {
        const double pn = th.matrix.at(n, n).real();
        if (pn == 0.0) continue;
        // branch A: one idler photon plus n thermal photons through the splitter
        std::vector<Complex> branch_a = scatter_fock(splitter, 1, n);
        const double na = vec_norm(branch_a);
        for (Complex& c : branch_a) c /= na;

        // branch B: thermal photons scatter with vacuum at the idler port,
        // then the bypass photon is created in the transmitted mode
        std::vector<Complex> scattered = scatter_fock(splitter, 0, n);
        std::vector<Complex> branch_b = apply_ladder(scattered, n, Complex(0.0, 0.0),
                                                     Complex(1.0, 0.0));
        const double nb = vec_norm(branch_b);
        for (Complex& c : branch_b) c /= nb;

        // fixed total photon number N = n+1 makes the reduced branches diagonal
        const int block = n + 1;
        for (int j = 0; j <= block; ++j) {
            rho_a.at(j, j) += pn * std::norm(branch_a[static_cast<std::size_t>(j)]);
            rho_b.at(j, j) += pn * std::norm(branch_b[static_cast<std::size_t>(j)]);
        }
        Complex ov = 0.0;
        for (int j = 0; j <= block; ++j)
            ov += std::conj(branch_b[static_cast<std::size_t>(j)]) *
                  branch_a[static_cast<std::size_t>(j)];
        vis_sum += pn * ov;
    }

    MixedMarkerPair out{DensityMatrix(rho_a), DensityMatrix(rho_b), std::abs(vis_sum), 0.0};
    out.fidelity = uhlmann_fidelity(out.rho_a, out.rho_b);
    return out;
}

MixedMarkerPair conditional_markers_thermal(const ThermalConfig& config) {
    return conditional_markers_at_cutoff(config.splitter, config.mean_photons, config.n_max);
}

DualityChain duality_chain(const ThermalConfig& config) {
    const MixedMarkerPair markers = conditional_markers_thermal(config);
    DualityChain chain;
    chain.visibility = markers.visibility;
    chain.fidelity = markers.fidelity;
    chain.p_inc_lower_bound = markers.fidelity;
    chain.chain_holds = markers.visibility <= markers.fidelity + 1e-9;
    return chain;
}

}  // namespace zwm
