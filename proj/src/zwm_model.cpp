// SPDX-License-Identifier: Apache-2.0
#include "zwm/zwm_model.hpp"

#include <cmath>

namespace zwm {

Priors::Priors(double p1_, double p2_) : p1(p1_), p2(p2_) {
    if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
        throw Error("Priors: probabilities must lie in [0, 1]");
    if (std::abs(p1 + p2 - 1.0) > 1e-12)
        throw Error("Priors: p1 + p2 = " + std::to_string(p1 + p2) + " != 1");
}

ObjectSplitter::ObjectSplitter(Complex t, Complex r) : t_(t), r_(r) {
    const double power = std::norm(t_) + std::norm(r_);
    if (std::abs(power - 1.0) > 1e-12)
        throw Error("ObjectSplitter: |r|^2 + |t|^2 = " + std::to_string(power) + " != 1");
}

ObjectSplitter ObjectSplitter::from_amplitude(double t_abs) {
    if (t_abs < 0.0 || t_abs > 1.0)
        throw Error("ObjectSplitter: amplitude transmittance outside [0, 1]");
    return {Complex(t_abs, 0.0), Complex(std::sqrt(std::max(0.0, 1.0 - t_abs * t_abs)), 0.0)};
}

ObjectSplitter ObjectSplitter::from_power(double t_power) {
    if (t_power < 0.0 || t_power > 1.0)
        throw Error("ObjectSplitter: power transmittance outside [0, 1]");
    return from_amplitude(std::sqrt(t_power));
}

double ObjectSplitter::power_transmittance() const { return std::norm(t_); }

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw DimensionError("PureState: empty amplitude vector");
    double n2 = 0.0;
    for (const Complex& a : amps_) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw Error("PureState: norm " + std::to_string(std::sqrt(n2)) + " != 1");
}

Complex overlap(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw DimensionError("overlap: dimension mismatch");
    Complex s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

PureState phase_fixed(const PureState& s) {
    for (int i = 0; i < s.dim(); ++i) {
        const double a = std::abs(s[i]);
        if (a > 1e-12) {
            const Complex phase = std::conj(s[i]) / a;
            std::vector<Complex> amps(s.amplitudes());
            for (Complex& x : amps) x *= phase;
            return PureState(std::move(amps));
        }
    }
    return s;
}

ComplexMatrix outer_product(const PureState& a) {
    ComplexMatrix m(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m.at(i, j) = a[i] * std::conj(a[j]);
    return m;
}

DensityMatrix density_from_pure(const PureState& a) { return DensityMatrix(outer_product(a)); }

ZwmConfig::ZwmConfig(ObjectSplitter s, double phase, Complex gamma, Priors p)
    : splitter(s), pump_phase(phase), mode_overlap(gamma), priors(p) {
    if (std::abs(mode_overlap) > 1.0 + 1e-12)
        throw Error("ZwmConfig: |mode_overlap| > 1");
}

std::pair<PureState, PureState> marker_states(const ObjectSplitter& splitter) {
    PureState phi_a({splitter.r(), splitter.t()});
    PureState phi_b({Complex(0.0, 0.0), Complex(1.0, 0.0)});
    return {phi_a, phi_b};
}

double visibility(const ZwmConfig& config) {
    return std::abs(config.mode_overlap) * std::abs(config.splitter.t());
}

double distinguishability(const ZwmConfig& config) {
    const double v = visibility(config);
    return std::sqrt(std::max(0.0, 1.0 - v * v));
}

DensityMatrix reduced_signal_state(const ZwmConfig& config) {
    const auto [phi_a, phi_b] = marker_states(config.splitter);
    const Complex gamma_eff = overlap(phi_a, phi_b) * config.mode_overlap;
    const Complex phase = std::polar(1.0, -config.pump_phase);
    ComplexMatrix rho(2);
    rho.at(0, 0) = config.priors.p1;
    rho.at(1, 1) = config.priors.p2;
    rho.at(0, 1) = std::sqrt(config.priors.p1 * config.priors.p2) * phase * std::conj(gamma_eff);
    rho.at(1, 0) = std::conj(rho.at(0, 1));
    return DensityMatrix(rho);
}

double general_marker_visibility(const Priors& priors, Complex gamma) {
    if (std::abs(gamma) > 1.0 + 1e-12) throw Error("general_marker_visibility: |gamma| > 1");
    return 2.0 * std::sqrt(priors.p1 * priors.p2) * std::abs(gamma);
}

double general_marker_distinguishability(const Priors& priors, Complex gamma) {
    if (std::abs(gamma) > 1.0 + 1e-12)
        throw Error("general_marker_distinguishability: |gamma| > 1");
    const double g2 = std::norm(gamma);
    return std::sqrt(std::max(0.0, 1.0 - 4.0 * priors.p1 * priors.p2 * g2));
}

}  // namespace zwm
