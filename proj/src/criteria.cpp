#include "metaplan/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace metaplan {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

void check_variance_pair(const NormalSummary& before, double after_variance) {
    if (!std::isfinite(before.mean) || !std::isfinite(before.variance) ||
        before.variance <= 0.0) {
        throw std::domain_error("invalid evidence state");
    }
    if (!std::isfinite(after_variance) || after_variance <= 0.0 ||
        after_variance >= before.variance) {
        throw std::domain_error(
            "after-study variance must lie strictly below the current variance");
    }
}

const SpikeSlabState& require_spike(const ProjectedEvidence& projected,
                                    const char* who) {
    if (!projected.spike_before || !projected.spike_after) {
        throw std::domain_error(std::string(who) +
                                ": projection carries no spike-and-slab state");
    }
    return *projected.spike_before;
}

}  // namespace

std::string_view to_string(CriterionId id) {
    switch (id) {
        case CriterionId::CP: return "cp";
        case CriterionId::DLOGP: return "dlogp";
        case CriterionId::LCL: return "lcl";
        case CriterionId::KL: return "kl";
        case CriterionId::DE: return "de";
        case CriterionId::BF: return "bf";
        case CriterionId::BFDR_INPUT: return "bfdr";
    }
    throw std::domain_error("unknown criterion id");
}

std::string_view to_string(Category c) {
    switch (c) {
        case Category::I: return "I";
        case Category::II: return "II";
        case Category::III: return "III";
        case Category::UNRANKED: return "unranked";
    }
    throw std::domain_error("unknown category");
}

CriterionId criterion_from_string(std::string_view name) {
    if (name == "cp") return CriterionId::CP;
    if (name == "dlogp") return CriterionId::DLOGP;
    if (name == "lcl") return CriterionId::LCL;
    if (name == "kl") return CriterionId::KL;
    if (name == "de") return CriterionId::DE;
    if (name == "bf") return CriterionId::BF;
    if (name == "bfdr") return CriterionId::BFDR_INPUT;
    throw std::domain_error("unknown criterion '" + std::string(name) + "'");
}

void CriterionConfig::validate() const {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw std::domain_error("delta must be nonnegative and finite");
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::domain_error("alpha must lie strictly in (0, 1)");
    }
    if (!std::isfinite(sigma_init_sq) || sigma_init_sq <= 0.0) {
        throw std::domain_error("sigma_init_sq must be positive and finite");
    }
    if (!std::isfinite(omega) || omega <= 0.0) {
        throw std::domain_error("omega must be positive and finite");
    }
    if (!(pi0 > 0.0) || !(pi0 < 1.0)) {
        throw std::domain_error("pi0 must lie strictly in (0, 1)");
    }
    if (!std::isfinite(bf_limit) || bf_limit <= 1.0) {
        throw std::domain_error("bf_limit must exceed 1");
    }
    if (!(bfdr_level > 0.0) || !(bfdr_level < 1.0)) {
        throw std::domain_error("bfdr_level must lie strictly in (0, 1)");
    }
}

double CriterionConfig::critical_value() const {
    return normal_quantile(1.0 - alpha / 2.0);
}

double conditional_power(const NormalSummary& before, double after_variance,
                         const CriterionConfig& cfg) {
    check_variance_pair(before, after_variance);
    // The pooled z-statistic after the new study is normal with mean
    // (mu1*A1 + delta*r^2)/sqrt(A2) and standard deviation r/sqrt(A2), where
    // A1, A2 are the precisions before/after and r^2 = A2 - A1 is the
    // precision the new study contributes.  Rejection of beta = 0 at level
    // alpha then has the two-tail probability below.
    const double a1 = 1.0 / before.variance;
    const double a2 = 1.0 / after_variance;
    const double c = cfg.critical_value();
    const double r = std::sqrt(a2 - a1);
    const double upper = (before.mean * a1 - c * std::sqrt(a2)) / r + cfg.delta * r;
    const double lower = (-before.mean * a1 - c * std::sqrt(a2)) / r - cfg.delta * r;
    return normal_cdf(upper) + normal_cdf(lower);
}

PValueChange p_value_change(const NormalSummary& before, double after_variance,
                            const CriterionConfig& cfg) {
    check_variance_pair(before, after_variance);
    if (before.mean <= cfg.delta) {
        return {quiet_nan, false};
    }
    const double excess = before.mean - cfg.delta;
    const double z1 = excess / std::sqrt(before.variance);
    const double z2 = excess / std::sqrt(after_variance);
    // log[2(1 - Phi(z))] = log 2 + log survival; the difference is the
    // expected drop of log p against the benchmark.
    return {normal_log_survival(z1) - normal_log_survival(z2), true};
}

double lcl_change(const NormalSummary& before, double after_variance,
                  const CriterionConfig& cfg) {
    check_variance_pair(before, after_variance);
    const double c = cfg.critical_value();
    const double l1 = before.mean - std::sqrt(before.variance) * c;
    const double l2 = before.mean - std::sqrt(after_variance) * c;
    return std::max(0.0, l2) - std::max(0.0, l1);
}

double kl_expected_impact(const NormalSummary& before, double after_variance,
                          const CriterionConfig& cfg) {
    check_variance_pair(before, after_variance);
    const double s1 = before.variance;
    const double s2 = after_variance;
    const double mu = before.mean;
    const double scale = (mu * mu + s2) / (s2 + cfg.omega);
    const double bracket = (2.0 * s2 - s1) / (cfg.sigma_init_sq + cfg.omega) -
                           std::log((s2 + cfg.omega) / (s1 + cfg.omega));
    return 0.25 * scale * bracket;
}

double expectation_change(const ProjectedEvidence& projected) {
    const SpikeSlabState& spike1 = require_spike(projected, "expectation_change");
    const SpikeSlabState& spike2 = *projected.spike_after;
    // pi2*mu2 - pi1*mu1 with mu2 = mu1 under this projection; the exclusion
    // probabilities carry the difference without cancellation when both
    // inclusion probabilities round to 1.
    return (spike1.exclusion_prob() - spike2.exclusion_prob()) *
           spike1.slab.mean;
}

BayesFactors bayes_factors(const ProjectedEvidence& projected,
                           const CriterionConfig& cfg) {
    const SpikeSlabState& spike1 = require_spike(projected, "bayes_factors");
    const SpikeSlabState& spike2 = *projected.spike_after;
    if (!(cfg.pi0 > 0.0) || !(cfg.pi0 < 1.0)) {
        throw std::domain_error("pi0 must lie strictly in (0, 1)");
    }
    const double lo0 = std::log(cfg.pi0) - std::log1p(-cfg.pi0);
    BayesFactors out;
    out.log_before = spike1.log_odds - lo0;
    out.log_after = spike2.log_odds - lo0;
    out.degenerate_before = std::isinf(spike1.log_odds);
    out.degenerate_after = std::isinf(spike2.log_odds);
    if (out.degenerate_before) {
        out.log_before = spike1.log_odds;  // +-infinity sentinel
    }
    if (out.degenerate_after) {
        out.log_after = spike2.log_odds;
    }
    return out;
}

CriterionBundle evaluate_criteria(const ProjectedEvidence& projected,
                                  const CriterionConfig& cfg) {
    CriterionBundle out;
    out.cp = conditional_power(projected.before, projected.after.variance, cfg);
    const PValueChange pc =
        p_value_change(projected.before, projected.after.variance, cfg);
    out.dlogp = pc.value;
    out.dlogp_applicable = pc.applicable;
    out.lcl = lcl_change(projected.before, projected.after.variance, cfg);
    out.kl = kl_expected_impact(projected.before, projected.after.variance, cfg);
    if (projected.spike_before && projected.spike_after) {
        out.de = expectation_change(projected);
        out.bf = bayes_factors(projected, cfg);
    } else {
        out.de = quiet_nan;
        out.bf = {quiet_nan, quiet_nan, false, false};
    }
    return out;
}

Category classify(CriterionId id, const ProjectedEvidence& projected,
                  const CriterionBundle& values, const CriterionConfig& cfg) {
    const NormalSummary& before = projected.before;
    const double c = cfg.critical_value();
    const double sd1 = std::sqrt(before.variance);
    switch (id) {
        case CriterionId::CP: {
            // Pre-study rejection is benchmarked at delta, not at zero: a
            // large effect that is compatible with delta still needs data.
            if (std::fabs(before.mean - cfg.delta) / sd1 > c) {
                return Category::I;
            }
            return values.cp >= 0.8 ? Category::II : Category::III;
        }
        case CriterionId::DLOGP: {
            if (!values.dlogp_applicable) {
                return Category::III;
            }
            return (before.mean - cfg.delta) / sd1 > c ? Category::I
                                                       : Category::II;
        }
        case CriterionId::LCL: {
            return before.mean - sd1 * c > cfg.delta ? Category::I
                                                     : Category::II;
        }
        case CriterionId::BF: {
            const double log_limit = std::log(cfg.bf_limit);
            if (values.bf.log_before > log_limit) {
                return Category::I;
            }
            return values.bf.log_after > log_limit ? Category::II
                                                   : Category::III;
        }
        case CriterionId::KL:
        case CriterionId::DE:
        case CriterionId::BFDR_INPUT:
            return Category::UNRANKED;
    }
    throw std::domain_error("unknown criterion id");
}

}  // namespace metaplan
