// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "zwm/smallmat.hpp"

namespace zwm {

/// Hypothesis priors (p1 for crystal A, p2 for crystal B), p1 + p2 = 1.
struct Priors {
    double p1;
    double p2;

    Priors(double p1_, double p2_);
    static Priors equal() { return {0.5, 0.5}; }
};

/// Lossless object beam splitter with complex amplitude transmittance t and
/// reflectivity r, |r|^2 + |t|^2 = 1. This is the single knob of the
/// interferometer; the power transmittance |t|^2 is a presentation-layer
/// convention only.
class ObjectSplitter {
public:
    ObjectSplitter(Complex t, Complex r);
    /// Real amplitudes t = t_abs, r = sqrt(1 - t_abs^2).
    static ObjectSplitter from_amplitude(double t_abs);
    /// Power convention: t = sqrt(T).
    static ObjectSplitter from_power(double t_power);

    Complex t() const { return t_; }
    Complex r() const { return r_; }
    double power_transmittance() const;

private:
    Complex t_;
    Complex r_;
};

/// Normalized state vector over a small mode space.
class PureState {
public:
    explicit PureState(std::vector<Complex> amplitudes);
    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    const Complex& operator[](int i) const { return amps_[static_cast<std::size_t>(i)]; }

private:
    std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex overlap(const PureState& a, const PureState& b);

/// Global phase fixed so the first component above 1e-12 is real positive.
PureState phase_fixed(const PureState& s);

/// |a><a|
ComplexMatrix outer_product(const PureState& a);
DensityMatrix density_from_pure(const PureState& a);

struct ZwmConfig {
    ObjectSplitter splitter;
    double pump_phase = 0.0;        // relative pump phase, radians
    Complex mode_overlap = 1.0;     // idler mode-overlap parameter, |gamma| <= 1
    Priors priors = Priors::equal();

    ZwmConfig(ObjectSplitter s, double phase = 0.0, Complex gamma = 1.0,
              Priors p = Priors::equal());
};

/// Conditional idler marker states in the ordered basis {|1,0>, |0,1>}:
/// phi_A = (r, t) for emission in crystal A, phi_B = (0, 1) for crystal B.
std::pair<PureState, PureState> marker_states(const ObjectSplitter& splitter);

/// Singles fringe visibility |gamma| * |t|.
double visibility(const ZwmConfig& config);

/// Which-crystal distinguishability sqrt(1 - V^2).
double distinguishability(const ZwmConfig& config);

/// Reduced signal state after tracing the idler: diagonal (p1, p2), coherence
/// sqrt(p1 p2) e^{-i phase} conj(gamma_eff) with gamma_eff = <phi_A|phi_B> * mode_overlap.
DensityMatrix reduced_signal_state(const ZwmConfig& config);

/// Visibility 2 sqrt(p1 p2) |gamma| for a general two-path marker pair with
/// overlap gamma.
double general_marker_visibility(const Priors& priors, Complex gamma);

/// Distinguishability sqrt(1 - 4 p1 p2 |gamma|^2); satisfies D^2 + V^2 = 1.
double general_marker_distinguishability(const Priors& priors, Complex gamma);

}  // namespace zwm
