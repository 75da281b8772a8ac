#include "metaplan/selection.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace metaplan {

std::vector<std::string> bfdr_select(std::vector<LfdrEntry> entries,
                                     double level) {
    if (!(level > 0.0) || !(level < 1.0)) {
        throw std::domain_error("bfdr level must lie strictly in (0, 1)");
    }
    for (const LfdrEntry& e : entries) {
        if (std::isnan(e.lfdr) || e.lfdr < 0.0 || e.lfdr > 1.0) {
            throw std::domain_error("lfdr for '" + e.covariate_id +
                                    "' must lie in [0, 1]");
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const LfdrEntry& a, const LfdrEntry& b) {
                  if (a.lfdr != b.lfdr) return a.lfdr < b.lfdr;
                  return a.covariate_id < b.covariate_id;
              });
    std::vector<std::string> selected;
    double running_sum = 0.0;
    for (const LfdrEntry& e : entries) {
        running_sum += e.lfdr;
        const double mean = running_sum / static_cast<double>(selected.size() + 1);
        if (!(mean < level)) {
            break;
        }
        selected.push_back(e.covariate_id);
    }
    return selected;
}

std::map<std::string, BfdrCategory> bfdr_categorize(
    const std::vector<LfdrEntry>& before, const std::vector<LfdrEntry>& after,
    double level) {
    std::set<std::string> ids_before, ids_after;
    for (const LfdrEntry& e : before) ids_before.insert(e.covariate_id);
    for (const LfdrEntry& e : after) ids_after.insert(e.covariate_id);
    if (ids_before != ids_after) {
        throw std::domain_error(
            "bfdr_categorize: before/after id sets do not match");
    }

    const std::vector<std::string> sel_before = bfdr_select(before, level);
    const std::vector<std::string> sel_after = bfdr_select(after, level);
    const std::set<std::string> in_before(sel_before.begin(), sel_before.end());
    const std::set<std::string> in_after(sel_after.begin(), sel_after.end());

    std::map<std::string, BfdrCategory> out;
    for (const std::string& id : ids_before) {
        BfdrCategory c;
        c.in_before = in_before.contains(id);
        c.in_after = in_after.contains(id);
        if (c.in_before && c.in_after) {
            c.category = Category::I;
        } else if (c.in_after) {
            c.category = Category::II;
        } else if (c.in_before) {
            c.category = Category::III;
            c.anomalous = true;
        } else {
            c.category = Category::III;
        }
        out.emplace(id, c);
    }
    return out;
}

namespace {

bool ranks_ascending(CriterionId id) { return id == CriterionId::BFDR_INPUT; }

}  // namespace

RankTable rank_covariates(const std::vector<CovariateScores>& scores) {
    RankTable table;
    for (const CovariateScores& cov : scores) {
        for (const CriterionResult& r : cov.results) {
            if (!r.applicable || r.category == Category::I) {
                continue;
            }
            table.order[r.id].push_back({cov.id, r.value});
        }
    }
    for (auto& [criterion, list] : table.order) {
        const bool ascending = ranks_ascending(criterion);
        std::sort(list.begin(), list.end(),
                  [ascending](const RankedValue& a, const RankedValue& b) {
                      if (a.value != b.value) {
                          return ascending ? a.value < b.value
                                           : a.value > b.value;
                      }
                      return a.id < b.id;
                  });
    }
    return table;
}

std::vector<std::string> RankTable::top_set(std::size_t k) const {
    bool first = true;
    std::set<std::string> acc;
    for (const auto& [criterion, list] : order) {
        std::set<std::string> top;
        for (std::size_t i = 0; i < list.size() && i < k; ++i) {
            top.insert(list[i].id);
        }
        if (first) {
            acc = std::move(top);
            first = false;
        } else {
            std::set<std::string> kept;
            for (const std::string& id : acc) {
                if (top.contains(id)) kept.insert(id);
            }
            acc = std::move(kept);
        }
    }
    return {acc.begin(), acc.end()};
}

}  // namespace metaplan
