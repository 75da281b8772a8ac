#include "metaplan/pipeline.hpp"

#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace metaplan {

std::string_view to_string(EvidenceSource source) {
    switch (source) {
        case EvidenceSource::replication_only: return "replication_only";
        case EvidenceSource::pooled: return "pooled";
    }
    throw std::domain_error("unknown evidence source");
}

EvidenceSource evidence_source_from_string(std::string_view name) {
    if (name == "replication_only") return EvidenceSource::replication_only;
    if (name == "pooled") return EvidenceSource::pooled;
    throw std::domain_error("unknown evidence source '" + std::string(name) +
                            "' (expected replication_only or pooled)");
}

void RunConfig::validate() const {
    criteria.validate();
    if (!std::isfinite(gamma_sq) || gamma_sq < 0.0) {
        throw std::domain_error("gamma_sq must be nonnegative and finite");
    }
    if (!std::isfinite(n_ref) || n_ref <= 0.0) {
        throw std::domain_error("n_ref must be positive and finite");
    }
}

NormalSummary stage1_summary(const CovariateRecord& record,
                             EvidenceSource source) {
    const NormalSummary replication{record.replication_beta,
                                    record.replication_se *
                                        record.replication_se};
    if (source == EvidenceSource::replication_only) {
        return replication;
    }
    const std::array<NormalSummary, 2> panels{
        NormalSummary{record.discovery_beta,
                      record.discovery_se * record.discovery_se},
        replication};
    return pool_fixed(panels);
}

std::vector<CovariateEvaluation> evaluate_records(
    const std::vector<CovariateRecord>& records, const RunConfig& cfg,
    std::optional<double> sample_size) {
    cfg.validate();
    std::set<std::string> seen;
    for (const CovariateRecord& r : records) {
        if (!seen.insert(r.id).second) {
            throw std::domain_error("duplicate covariate id '" + r.id + "'");
        }
    }

    std::vector<CovariateEvaluation> evals;
    evals.reserve(records.size());
    for (const CovariateRecord& r : records) {
        const NormalSummary stage1 = stage1_summary(r, cfg.evidence_source);
        const double v_ref = r.new_study_se() * r.new_study_se();
        const StudyPlan plan =
            sample_size ? StudyPlan::with_sample_size(*sample_size, cfg.n_ref,
                                                      v_ref, cfg.gamma_sq)
                        : StudyPlan::with_variance(v_ref, cfg.gamma_sq);

        CovariateEvaluation e;
        e.id = r.id;
        e.label = r.label;
        const SpikeSlabState spike1 = init_spike_slab(cfg.criteria.pi0, stage1);
        e.projected = project_spike_slab(spike1, plan);
        e.values = evaluate_criteria(e.projected, cfg.criteria);
        e.cp_cat = classify(CriterionId::CP, e.projected, e.values, cfg.criteria);
        e.dlogp_cat =
            classify(CriterionId::DLOGP, e.projected, e.values, cfg.criteria);
        e.lcl_cat = classify(CriterionId::LCL, e.projected, e.values, cfg.criteria);
        e.bf_cat = classify(CriterionId::BF, e.projected, e.values, cfg.criteria);
        e.kl_cat = e.bf_cat;
        e.de_cat = e.bf_cat;
        e.lfdr_before = e.projected.spike_before->exclusion_prob();
        e.lfdr_after = e.projected.spike_after->exclusion_prob();
        evals.push_back(std::move(e));
    }

    std::vector<LfdrEntry> before, after;
    before.reserve(evals.size());
    after.reserve(evals.size());
    for (const CovariateEvaluation& e : evals) {
        before.push_back({e.id, e.lfdr_before});
        after.push_back({e.id, e.lfdr_after});
    }
    const auto categories =
        bfdr_categorize(before, after, cfg.criteria.bfdr_level);
    for (CovariateEvaluation& e : evals) {
        e.bfdr = categories.at(e.id);
    }
    return evals;
}

std::vector<CovariateScores> scores_for_ranking(
    const std::vector<CovariateEvaluation>& evals) {
    std::vector<CovariateScores> scores;
    scores.reserve(evals.size());
    for (const CovariateEvaluation& e : evals) {
        CovariateScores s;
        s.id = e.id;
        s.results = {
            {CriterionId::CP, e.values.cp, true, e.cp_cat},
            {CriterionId::DLOGP, e.values.dlogp, e.values.dlogp_applicable,
             e.dlogp_cat},
            {CriterionId::LCL, e.values.lcl, true, e.lcl_cat},
            {CriterionId::KL, e.values.kl, true, e.kl_cat},
            {CriterionId::DE, e.values.de, true, e.de_cat},
            {CriterionId::BF, e.values.bf.log_after, true, e.bf_cat},
            // lfdr scores rank ascending (smallest false-discovery risk
            // first); rank_covariates knows the direction.
            {CriterionId::BFDR_INPUT, e.lfdr_after, true, e.bfdr.category},
        };
        scores.push_back(std::move(s));
    }
    return scores;
}

}  // namespace metaplan
