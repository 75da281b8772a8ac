#pragma once

#include <string>
#include <vector>

#include "metaplan/pipeline.hpp"
#include "metaplan/planner.hpp"

namespace metaplan {

enum class ReportFormat { tsv, csv, md };

// Accepts "tsv", "csv", or "md"; throws std::invalid_argument otherwise.
ReportFormat report_format_from_string(const std::string& text);
std::string to_string(ReportFormat format);

struct ReportOptions {
    ReportFormat format = ReportFormat::tsv;
    // When set, the report starts with a comment line naming the tool and
    // version.  Disable for byte-stable output across releases.
    bool version_header = true;
};

struct MinSampleRow {
    std::string id;
    CriterionId criterion;
    double target;
    MinSampleResult result;
};

// Scored report: one row per covariate in input order with the display
// rounding used throughout (CP 2 dp, p-value drop 1 dp or "--", confidence
// gain 3 dp, divergence x1000 as an integer, expectation shift 3 dp), a "*"
// suffix on category-I cells, and "after-before" bit pairs for the Bayes
// factor and the false-discovery selection.
std::string render_rank(const std::vector<CovariateEvaluation>& evals,
                        const ReportOptions& options);

// Category report: one row per covariate in input order, Roman numerals per
// criterion; an anomalous selection reversal is marked in the bfdr column.
std::string render_classify(const std::vector<CovariateEvaluation>& evals,
                            const ReportOptions& options);

// Sweep report: one row per (covariate, axis point), ordered by covariate id
// then axis value.
std::string render_sweep(const SweepResult& sweep, const ReportOptions& options);

// Minimum-sample-size report: one row per request, in request order.
std::string render_min_n(const std::vector<MinSampleRow>& rows,
                         const ReportOptions& options);

}  // namespace metaplan
