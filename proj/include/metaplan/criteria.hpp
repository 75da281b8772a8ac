#pragma once

#include <string_view>

#include "metaplan/evidence.hpp"

namespace metaplan {

// The seven expected-scientific-impact criteria.  BFDR_INPUT stands apart:
// its per-covariate value (the local false discovery rate) only becomes a
// category through the cross-covariate selection procedure.
enum class CriterionId { CP, DLOGP, LCL, KL, DE, BF, BFDR_INPUT };

// I: conclusive evidence of an effect already; II: inconclusive but the
// planned study is expected to settle it (the replication targets); III:
// conclusive evidence of no clinically significant effect.  UNRANKED marks
// criteria that order covariates without assigning a category themselves.
enum class Category { I, II, III, UNRANKED };

std::string_view to_string(CriterionId id);
std::string_view to_string(Category c);
CriterionId criterion_from_string(std::string_view name);

// All user-set parameters of the criteria.
struct CriterionConfig {
    double delta = 0.03;         // smallest clinically significant effect
    double alpha = 6.9e-4;       // two-sided significance level
    double sigma_init_sq = 100;  // initial variance for the KL criterion
    double omega = 1e-4;         // variance floor for the KL criterion
    double pi0 = 1e-6;           // prior inclusion probability
    double bf_limit = 1e6;       // decisive-support Bayes factor threshold
    double bfdr_level = 0.05;

    // Throws std::domain_error when any parameter is outside its range.
    void validate() const;
    // Two-sided critical value C = Phi^{-1}(1 - alpha/2).
    double critical_value() const;
};

struct CriterionResult {
    CriterionId id;
    double value;  // NaN when not applicable
    bool applicable;
    Category category;
};

// Bayes factors in log space: bf = posterior inclusion odds / prior
// inclusion odds.  When an inclusion probability is exactly 0 or 1 the log
// Bayes factor degenerates to -/+infinity and the flag is set.
struct BayesFactors {
    double log_before;
    double log_after;
    bool degenerate_before = false;
    bool degenerate_after = false;
};

// Probability that the meta-analysis updated with the planned study rejects
// beta = 0 at level alpha, when the new estimate is drawn around the
// benchmark delta.  Requires after_variance < before.variance.
double conditional_power(const NormalSummary& before, double after_variance,
                         const CriterionConfig& cfg);

// Expected drop of log p (natural log), testing against the benchmark
// delta.  Only defined when the current mean exceeds delta; the applicable
// flag of the result conveys the "--" rows of the report.
struct PValueChange {
    double value;
    bool applicable;
};
PValueChange p_value_change(const NormalSummary& before, double after_variance,
                            const CriterionConfig& cfg);

// Expected gain of the lower confidence limit, clipped at zero on both
// sides; nonnegative because the interval can only tighten.
double lcl_change(const NormalSummary& before, double after_variance,
                  const CriterionConfig& cfg);

// Closed-form expected Kullback-Leibler impact of the planned study.
double kl_expected_impact(const NormalSummary& before, double after_variance,
                          const CriterionConfig& cfg);

// Difference between expected posterior and current expectation of the
// effect under the spike-and-slab states; requires spike fields.
double expectation_change(const ProjectedEvidence& projected);

// Log Bayes factors before/after the planned study; requires spike fields.
BayesFactors bayes_factors(const ProjectedEvidence& projected,
                           const CriterionConfig& cfg);

// All seven raw values for one covariate.
struct CriterionBundle {
    double cp;
    double dlogp;  // NaN when inapplicable
    bool dlogp_applicable;
    double lcl;
    double kl;
    double de;
    BayesFactors bf;
};
CriterionBundle evaluate_criteria(const ProjectedEvidence& projected,
                                  const CriterionConfig& cfg);

// Category label a single criterion's own rule assigns.  KL, DE and
// BFDR_INPUT have no rule of their own and return UNRANKED: the first two
// inherit the BF label downstream, the last is categorized by the
// cross-covariate BFDR selection.  Unknown ids throw std::domain_error.
Category classify(CriterionId id, const ProjectedEvidence& projected,
                  const CriterionBundle& values, const CriterionConfig& cfg);

}  // namespace metaplan
