#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metaplan/criteria.hpp"
#include "metaplan/selection.hpp"

namespace metaplan {

// Which panels form the stage-1 evidence state.  Basing it on the
// replication panel alone avoids the winner's-curse bias of estimates from
// the panel that selected the covariates; pooling is exposed for data sets
// without that concern.
enum class EvidenceSource { replication_only, pooled };

std::string_view to_string(EvidenceSource source);
EvidenceSource evidence_source_from_string(std::string_view name);

struct CovariateRecord {
    std::string id;
    std::string label;
    std::string sublabel;
    double discovery_beta = 0.0;
    double discovery_se = 0.0;
    double replication_beta = 0.0;
    double replication_se = 0.0;
    // Standard error the planned study would have at the reference sample
    // size; defaults to the replication standard error ("same size").
    std::optional<double> new_se;

    double new_study_se() const { return new_se.value_or(replication_se); }

    bool operator==(const CovariateRecord&) const = default;
};

struct RunConfig {
    CriterionConfig criteria;
    EvidenceSource evidence_source = EvidenceSource::replication_only;
    double gamma_sq = 0.0;  // between-study heterogeneity of the new study
    double n_ref = 16540.0;  // reference sample size behind new_study_se

    void validate() const;
};

NormalSummary stage1_summary(const CovariateRecord& record,
                             EvidenceSource source);

// Everything the reports need for one covariate.
struct CovariateEvaluation {
    std::string id;
    std::string label;
    ProjectedEvidence projected;
    CriterionBundle values;
    Category cp_cat = Category::UNRANKED;
    Category dlogp_cat = Category::UNRANKED;
    Category lcl_cat = Category::UNRANKED;
    Category bf_cat = Category::UNRANKED;
    // KL and dE rank covariates without a rule of their own and inherit the
    // BF-rule label (used for category-I exclusion and report markers).
    Category kl_cat = Category::UNRANKED;
    Category de_cat = Category::UNRANKED;
    double lfdr_before = 1.0;
    double lfdr_after = 1.0;
    BfdrCategory bfdr;
};

// Full evaluation of all records: stage-1 state per evidence source,
// spike-and-slab initialization, projection of the planned study, all seven
// criteria, per-criterion categories and the cross-covariate BFDR pass.
// The planned study matches the reference size unless sample_size is given,
// in which case its variance scales as new_se^2 * n_ref / sample_size.
std::vector<CovariateEvaluation> evaluate_records(
    const std::vector<CovariateRecord>& records, const RunConfig& cfg,
    std::optional<double> sample_size = std::nullopt);

// Scores feeding rank_covariates, one entry per criterion per covariate.
std::vector<CovariateScores> scores_for_ranking(
    const std::vector<CovariateEvaluation>& evals);

}  // namespace metaplan
