// SPDX-License-Identifier: Apache-2.0
#include "zwm/shot_sim.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace zwm {

CountRecord merge(const CountRecord& x, const CountRecord& y) {
    CountRecord m;
    m.n_a = x.n_a + y.n_a;
    m.n_b = x.n_b + y.n_b;
    m.n_inc = x.n_inc + y.n_inc;
    m.n_total = x.n_total + y.n_total;
    m.truth_a = x.truth_a + y.truth_a;
    m.errors_a = x.errors_a + y.errors_a;
    m.errors_b = x.errors_b + y.errors_b;
    return m;
}

namespace {

// outcome distribution for one hypothesis, clamped and renormalized
std::vector<double> outcome_cdf(const Povm& povm, const DensityMatrix& rho, double loss) {
    const int k = povm.size();
    std::vector<double> p(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        double q = trace_product(povm.element(i), rho.matrix()).real();
        if (q < -1e-10)
            throw Error("simulate_counts: negative outcome probability " + std::to_string(q));
        if (std::abs(q) <= 1e-12) q = 0.0;
        if (loss > 0.0) {
            q *= 1.0 - loss;
            if (povm.label(i) == Outcome::Inconclusive) q += loss;
        }
        p[static_cast<std::size_t>(i)] = q;
        sum += q;
    }
    if (loss > 0.0) {
        // with no inconclusive element the lost weight stands alone; the
        // caller sees it as an extra trailing bin
        bool has_inc = false;
        for (int i = 0; i < k; ++i)
            if (povm.label(i) == Outcome::Inconclusive) has_inc = true;
        if (!has_inc) {
            p.push_back(loss);
            sum += loss;
        }
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw Error("simulate_counts: outcome probabilities sum to " + std::to_string(sum));
    for (double& q : p) q /= sum;
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

}  // namespace

CountRecord simulate_counts(const ShotConfig& config) {
    if (config.n_shots < 1) throw Error("simulate_counts: n_shots must be >= 1");
    if (config.loss < 0.0 || config.loss >= 1.0)
        throw Error("simulate_counts: loss must lie in [0, 1)");
    if (config.povm.dim() != config.rho_a.dim() || config.rho_a.dim() != config.rho_b.dim())
        throw DimensionError("simulate_counts: dimension mismatch");

    const std::vector<double> cdf_a = outcome_cdf(config.povm, config.rho_a, config.loss);
    const std::vector<double> cdf_b = outcome_cdf(config.povm, config.rho_b, config.loss);
    const int k = config.povm.size();

    Xorshift64Star rng(config.seed);
    CountRecord rec;
    rec.n_total = config.n_shots;
    for (long long shot = 0; shot < config.n_shots; ++shot) {
        const bool truth_is_a = rng.next_unit() < config.priors.p1;
        if (truth_is_a) ++rec.truth_a;
        const std::vector<double>& cdf = truth_is_a ? cdf_a : cdf_b;
        const double u = rng.next_unit();
        std::size_t outcome = 0;
        while (outcome + 1 < cdf.size() && u >= cdf[outcome]) ++outcome;
        const Outcome label = (outcome < static_cast<std::size_t>(k))
                                  ? config.povm.label(static_cast<int>(outcome))
                                  : Outcome::Inconclusive;
        switch (label) {
            case Outcome::ConclusiveA:
                ++rec.n_a;
                if (!truth_is_a) ++rec.errors_b;
                break;
            case Outcome::ConclusiveB:
                ++rec.n_b;
                if (truth_is_a) ++rec.errors_a;
                break;
            case Outcome::Inconclusive:
                ++rec.n_inc;
                break;
        }
    }
    return rec;
}

ProbabilityEstimates estimate_probabilities(const CountRecord& counts) {
    if (counts.n_total < 1) throw Error("estimate_probabilities: no shots recorded");
    ProbabilityEstimates est;
    const double n = static_cast<double>(counts.n_total);
    est.p_suc_hat = static_cast<double>(counts.n_a + counts.n_b) / n;
    est.p_inc_hat = static_cast<double>(counts.n_inc) / n;
    est.se_suc = std::sqrt(est.p_suc_hat * (1.0 - est.p_suc_hat) / n);
    est.se_inc = std::sqrt(est.p_inc_hat * (1.0 - est.p_inc_hat) / n);
    return est;
}

ConfusionMatrix confusion_matrix(const CountRecord& counts) {
    ConfusionMatrix cm;
    const long long truth_b = counts.n_total - counts.truth_a;
    const long long a_given_a = counts.n_a - counts.errors_b;
    const long long b_given_b = counts.n_b - counts.errors_a;
    if (counts.truth_a > 0) {
        cm.defined_a = true;
        const double na = static_cast<double>(counts.truth_a);
        cm.p_a_given_a = static_cast<double>(a_given_a) / na;
        cm.p_err_given_a = static_cast<double>(counts.errors_a) / na;
        cm.p_inc_given_a = 1.0 - cm.p_a_given_a - cm.p_err_given_a;
    }
    if (truth_b > 0) {
        cm.defined_b = true;
        const double nb = static_cast<double>(truth_b);
        cm.p_b_given_b = static_cast<double>(b_given_b) / nb;
        cm.p_err_given_b = static_cast<double>(counts.errors_b) / nb;
        cm.p_inc_given_b = 1.0 - cm.p_b_given_b - cm.p_err_given_b;
    }
    if (counts.n_total > 0)
        cm.empirical_bayes_error =
            static_cast<double>(counts.errors_a + counts.errors_b) /
            static_cast<double>(counts.n_total);
    return cm;
}

std::string count_record_csv_line(const CountRecord& counts, std::uint64_t seed,
                                  long long n_shots, double t_amp) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%llu,%lld,%.6f,%lld,%lld,%lld,%lld,%lld",
                  static_cast<unsigned long long>(seed), n_shots, t_amp, counts.n_a, counts.n_b,
                  counts.n_inc, counts.errors_a, counts.errors_b);
    return std::string(buf);
}

}  // namespace zwm
