#include "metaplan/evidence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace metaplan {

namespace {

double sigmoid(double t) {
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

void check_positive(double x, const char* what) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

double SpikeSlabState::inclusion_prob() const { return sigmoid(log_odds); }

double SpikeSlabState::exclusion_prob() const { return sigmoid(-log_odds); }

SpikeSlabState SpikeSlabState::from_inclusion_prob(double pi, NormalSummary slab) {
    if (std::isnan(pi) || pi < 0.0 || pi > 1.0) {
        throw std::domain_error("inclusion probability must lie in [0, 1]");
    }
    double lo;
    if (pi == 0.0) {
        lo = -std::numeric_limits<double>::infinity();
    } else if (pi == 1.0) {
        lo = std::numeric_limits<double>::infinity();
    } else {
        lo = std::log(pi) - std::log1p(-pi);
    }
    return {lo, slab};
}

StudyPlan StudyPlan::with_variance(double v, double gamma_sq) {
    check_positive(v, "within-study variance");
    if (!std::isfinite(gamma_sq) || gamma_sq < 0.0) {
        throw std::domain_error("heterogeneity must be nonnegative and finite");
    }
    return {v, gamma_sq};
}

StudyPlan StudyPlan::with_sample_size(double n, double n_ref, double v_ref,
                                      double gamma_sq) {
    check_positive(n, "sample size");
    check_positive(n_ref, "reference sample size");
    check_positive(v_ref, "reference variance");
    return with_variance(v_ref * n_ref / n, gamma_sq);
}

double project_variance_fixed(double sigma1_sq, double v) {
    check_positive(sigma1_sq, "sigma1_sq");
    check_positive(v, "v");
    return 1.0 / (1.0 / sigma1_sq + 1.0 / v);
}

double project_variance_random(double sigma1_sq, double v, double gamma_sq) {
    check_positive(sigma1_sq, "sigma1_sq");
    check_positive(v, "v");
    if (!std::isfinite(gamma_sq) || gamma_sq < 0.0) {
        throw std::domain_error("heterogeneity must be nonnegative and finite");
    }
    const double u = v + gamma_sq;
    return sigma1_sq * u / (u + sigma1_sq);
}

SpikeSlabState init_spike_slab(double pi0, NormalSummary observed) {
    if (!(pi0 > 0.0) || !(pi0 < 1.0)) {
        throw std::domain_error("pi0 must lie strictly in (0, 1)");
    }
    const double lo0 = std::log(pi0) - std::log1p(-pi0);
    // Flat-slab plug-in: slab likelihood is the density at its own mean, the
    // spike likelihood the density under a zero effect.  The shared
    // normalising constants cancel exactly in the log-odds update.
    const double log_slab =
        normal_log_pdf(observed.mean, observed.mean, observed.variance);
    const double log_spike = normal_log_pdf(observed.mean, 0.0, observed.variance);
    return {lo0 + log_slab - log_spike, observed};
}

ProjectedEvidence project_plain(NormalSummary summary, StudyPlan plan) {
    check_positive(summary.variance, "variance");
    if (!std::isfinite(summary.mean)) {
        throw std::domain_error("mean must be finite");
    }
    const double after_var = project_variance_random(
        summary.variance, plan.within_variance, plan.heterogeneity);
    ProjectedEvidence out;
    out.before = summary;
    out.after = {summary.mean, after_var};
    out.planned_observation = {summary.mean, plan.within_variance};
    return out;
}

ProjectedEvidence project_spike_slab(SpikeSlabState state, StudyPlan plan) {
    ProjectedEvidence out = project_plain(state.slab, plan);
    // Bayes step for the inclusion odds: the expected new observation (the
    // current mean) is weighed under the updated slab, whose mean it equals,
    // against the spike at zero.  Evaluated with the effective (heterogeneity
    // widened) variance, in log space.
    const double v_eff = plan.effective_variance();
    const double mean = state.slab.mean;
    const double log_slab = normal_log_pdf(mean, mean, v_eff);
    const double log_spike = normal_log_pdf(mean, 0.0, v_eff);
    SpikeSlabState after{state.log_odds + log_slab - log_spike, out.after};
    out.spike_before = state;
    out.spike_after = after;
    return out;
}

}  // namespace metaplan
