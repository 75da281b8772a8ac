#pragma once

#include <functional>
#include <span>
#include <vector>

#include "metaplan/pipeline.hpp"

namespace metaplan {

enum class SweepAxis { sample_size, prior_prob };

struct SweepSpec {
    SweepAxis axis = SweepAxis::sample_size;
    CriterionId criterion = CriterionId::DE;
    std::vector<double> grid;  // strictly increasing, in the axis domain
};

struct SweepPoint {
    std::string covariate_id;
    double axis_value;
    double value;
    bool applicable;
    Category category;
};

// Long-format sweep output, ordered by covariate id then axis value.
struct SweepResult {
    SweepAxis axis;
    CriterionId criterion;
    std::vector<SweepPoint> points;
};

// points log-spaced values covering [lo, hi] inclusive.
std::vector<double> log_spaced_grid(double lo, double hi, int points);

// 200 log-spaced sample sizes on [1000, 200000].
std::vector<double> default_sample_size_grid();

// Prior inclusion probabilities 10^x for x = -16, -15.8, ..., -0.2.
std::vector<double> default_prior_grid();

// Criterion value and category for every covariate at every planned sample
// size in the grid.  For KL and dE the category is the BF-rule label at that
// sample size; for bfdr it comes from the per-point selection.
SweepResult sweep_sample_size(const std::vector<CovariateRecord>& records,
                              const RunConfig& cfg, const SweepSpec& spec);

// BFDR category (and after-study lfdr as the value) for every covariate at
// every prior inclusion probability in the grid, with the planned study at
// the reference size.
SweepResult sweep_prior(const std::vector<CovariateRecord>& records,
                        const RunConfig& cfg, const SweepSpec& spec);

struct MinSampleResult {
    bool attainable = false;
    double sample_size = 0.0;  // NaN when unattainable
    // "bisection" normally; "grid-scan" when the criterion turned out not to
    // be monotone over the grid and the search fell back to a full scan.
    std::string method;
};

// Smallest grid sample size at which the criterion reaches the target
// (criterion value >= target; for bf the target is a Bayes factor).
// Searches a log-spaced grid of `points` sizes on [n_lo, n_hi] by bisection,
// verifying the monotonicity assumption afterwards.
MinSampleResult min_sample_size(const CovariateRecord& record,
                                const RunConfig& cfg, CriterionId criterion,
                                double target, double n_lo, double n_hi,
                                int points = 200);

// Grid-search core of min_sample_size, exposed for direct use: first grid
// value satisfying `met`, assuming (and verifying) monotonicity.
MinSampleResult min_sample_size_over(const std::function<bool(double)>& met,
                                     std::span<const double> grid);

}  // namespace metaplan
