#pragma once

#include <optional>

#include "metaplan/stats.hpp"

namespace metaplan {

// Spike-and-slab evidence state for one covariate.  The log-odds of
// inclusion is the authoritative representation: after a strong study the
// inclusion probability is indistinguishable from 1 in double precision,
// while its log-odds (and hence the exclusion probability, the local false
// discovery rate) remains exact.
struct SpikeSlabState {
    double log_odds = 0.0;
    NormalSummary slab;

    double inclusion_prob() const;
    // 1 - inclusion_prob(), computed without cancellation; this is the
    // local false discovery rate used by the BFDR selection.
    double exclusion_prob() const;

    static SpikeSlabState from_inclusion_prob(double pi, NormalSummary slab);
};

// Description of the planned new study: its within-study variance (directly,
// or through a sample size relative to a reference study) and the
// between-study heterogeneity under a random-effects model.
struct StudyPlan {
    double within_variance = 1.0;
    double heterogeneity = 0.0;  // gamma^2; 0 recovers fixed effects

    static StudyPlan with_variance(double v, double gamma_sq = 0.0);
    // v(n) = v_ref * n_ref / n: standard-error scaling from a reference
    // study of size n_ref with within-study variance v_ref.
    static StudyPlan with_sample_size(double n, double n_ref, double v_ref,
                                      double gamma_sq = 0.0);

    double effective_variance() const { return within_variance + heterogeneity; }
};

// Evidence before and after the planned study, with the spike-and-slab
// states alongside when the projection tracks inclusion probabilities.
struct ProjectedEvidence {
    NormalSummary before;
    NormalSummary after;
    std::optional<SpikeSlabState> spike_before;
    std::optional<SpikeSlabState> spike_after;
    NormalSummary planned_observation;
};

// Posterior variance after adding a study of within-variance v under fixed
// effects: precisions add.
double project_variance_fixed(double sigma1_sq, double v);

// Random-effects counterpart: sigma1^2 * (v + gamma^2) / (v + gamma^2 +
// sigma1^2).  Heterogeneity caps the precision any single study can add;
// gamma^2 = 0 recovers the fixed-effects value exactly.
double project_variance_random(double sigma1_sq, double v, double gamma_sq);

// Stage-1 update of the prior inclusion probability pi0 given the observed
// evidence state.  The slab is treated as flat, so its marginal likelihood
// is the plug-in density of the estimate at its own mean; the spike
// likelihood is the density of the estimate under a zero effect.
SpikeSlabState init_spike_slab(double pi0, NormalSummary observed);

// Projection of a plain normal state: the expected new estimate equals the
// current mean, so only the variance moves.
ProjectedEvidence project_plain(NormalSummary summary, StudyPlan plan);

// Projection of a spike-and-slab state: updates the slab as project_plain
// and the inclusion probability by a Bayes step in which the expected new
// observation (the current mean) is weighed under the slab and under the
// spike.  Inclusion probability never decreases under this projection.
ProjectedEvidence project_spike_slab(SpikeSlabState state, StudyPlan plan);

}  // namespace metaplan
