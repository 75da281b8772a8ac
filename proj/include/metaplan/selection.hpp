#pragma once

#include <map>
#include <string>
#include <vector>

#include "metaplan/criteria.hpp"

namespace metaplan {

struct LfdrEntry {
    std::string covariate_id;
    double lfdr;  // local false discovery rate, in [0, 1]
};

// Bayesian FDR selection: the longest prefix of the ascending-lfdr ordering
// whose mean lfdr stays strictly below the level.  Ties in lfdr are broken
// by covariate id, so the selection is reproducible.  Returns the selected
// ids in prefix (ascending-lfdr) order.
std::vector<std::string> bfdr_select(std::vector<LfdrEntry> entries,
                                     double level);

struct BfdrCategory {
    bool in_before = false;
    bool in_after = false;
    Category category = Category::III;
    // A covariate selected before the study but not after would mean the
    // planned study is expected to weaken its evidence; impossible under
    // this projection, flagged rather than silently categorized.
    bool anomalous = false;
};

// Per-covariate category from the before/after BFDR selections: in both ->
// I, after only -> II, neither -> III.  The id sets must coincide.  Results
// are keyed by covariate id.
std::map<std::string, BfdrCategory> bfdr_categorize(
    const std::vector<LfdrEntry>& before, const std::vector<LfdrEntry>& after,
    double level);

// One covariate's scores across criteria, input to the ranking.
struct CovariateScores {
    std::string id;
    std::vector<CriterionResult> results;
};

struct RankedValue {
    std::string id;
    double value;
};

// Prioritization orders per criterion.  Category-I covariates are excluded
// (further studies cannot add to conclusive evidence), as are inapplicable
// results.  Orders are by descending value -- except BFDR_INPUT, whose value
// is an lfdr and orders ascending -- with ties broken by id.
struct RankTable {
    std::map<CriterionId, std::vector<RankedValue>> order;

    // Ids appearing in the top k of every criterion's order, id-sorted.
    std::vector<std::string> top_set(std::size_t k) const;
};

RankTable rank_covariates(const std::vector<CovariateScores>& scores);

}  // namespace metaplan
