#include "metaplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace metaplan {

namespace {

void check_grid(std::span<const double> grid, bool probabilities) {
    if (grid.empty()) {
        throw std::domain_error("sweep grid must not be empty");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (double g : grid) {
        if (!std::isfinite(g) || g <= 0.0 || (probabilities && g >= 1.0)) {
            throw std::domain_error(probabilities
                                        ? "prior grid values must lie in (0, 1)"
                                        : "sample sizes must be positive");
        }
        if (g <= prev) {
            throw std::domain_error("sweep grid must be strictly increasing");
        }
        prev = g;
    }
}

struct PointValue {
    double value;
    bool applicable;
    Category category;
};

PointValue point_for(const CovariateEvaluation& e, CriterionId criterion) {
    switch (criterion) {
        case CriterionId::CP:
            return {e.values.cp, true, e.cp_cat};
        case CriterionId::DLOGP:
            return {e.values.dlogp, e.values.dlogp_applicable, e.dlogp_cat};
        case CriterionId::LCL:
            return {e.values.lcl, true, e.lcl_cat};
        case CriterionId::KL:
            return {e.values.kl, true, e.kl_cat};
        case CriterionId::DE:
            return {e.values.de, true, e.de_cat};
        case CriterionId::BF:
            return {e.values.bf.log_after, true, e.bf_cat};
        case CriterionId::BFDR_INPUT:
            return {e.lfdr_after, true, e.bfdr.category};
    }
    throw std::domain_error("unknown criterion id");
}

SweepResult assemble(SweepAxis axis, CriterionId criterion,
                     const std::map<std::string, std::vector<SweepPoint>>& rows) {
    SweepResult out{axis, criterion, {}};
    for (const auto& [id, points] : rows) {
        out.points.insert(out.points.end(), points.begin(), points.end());
    }
    return out;
}

}  // namespace

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo <= 0.0 || hi <= lo) {
        throw std::domain_error("grid bounds must satisfy 0 < lo < hi");
    }
    if (points < 2) {
        throw std::domain_error("grid needs at least two points");
    }
    std::vector<double> grid(points);
    const double ratio = hi / lo;
    for (int i = 0; i < points; ++i) {
        grid[i] = lo * std::pow(ratio, static_cast<double>(i) / (points - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> default_sample_size_grid() {
    return log_spaced_grid(1000.0, 200000.0, 200);
}

std::vector<double> default_prior_grid() {
    std::vector<double> grid;
    grid.reserve(80);
    for (int i = 0; i < 80; ++i) {
        grid.push_back(std::pow(10.0, -16.0 + 0.2 * i));
    }
    return grid;
}

SweepResult sweep_sample_size(const std::vector<CovariateRecord>& records,
                              const RunConfig& cfg, const SweepSpec& spec) {
    if (spec.axis != SweepAxis::sample_size) {
        throw std::domain_error("sweep_sample_size requires the sample_size axis");
    }
    check_grid(spec.grid, false);
    std::map<std::string, std::vector<SweepPoint>> rows;
    for (double n : spec.grid) {
        const auto evals = evaluate_records(records, cfg, n);
        for (const CovariateEvaluation& e : evals) {
            const PointValue p = point_for(e, spec.criterion);
            rows[e.id].push_back({e.id, n, p.value, p.applicable, p.category});
        }
    }
    return assemble(spec.axis, spec.criterion, rows);
}

SweepResult sweep_prior(const std::vector<CovariateRecord>& records,
                        const RunConfig& cfg, const SweepSpec& spec) {
    if (spec.axis != SweepAxis::prior_prob) {
        throw std::domain_error("sweep_prior requires the prior_prob axis");
    }
    check_grid(spec.grid, true);
    std::map<std::string, std::vector<SweepPoint>> rows;
    for (double pi0 : spec.grid) {
        RunConfig at_point = cfg;
        at_point.criteria.pi0 = pi0;
        const auto evals = evaluate_records(records, at_point);
        for (const CovariateEvaluation& e : evals) {
            rows[e.id].push_back(
                {e.id, pi0, e.lfdr_after, true, e.bfdr.category});
        }
    }
    return assemble(spec.axis, CriterionId::BFDR_INPUT, rows);
}

MinSampleResult min_sample_size_over(const std::function<bool(double)>& met,
                                     std::span<const double> grid) {
    check_grid(grid, false);
    std::map<std::size_t, bool> memo;
    const auto met_at = [&](std::size_t i) {
        auto it = memo.find(i);
        if (it == memo.end()) {
            it = memo.emplace(i, met(grid[i])).first;
        }
        return it->second;
    };

    MinSampleResult out;
    out.method = "bisection";
    if (!met_at(grid.size() - 1)) {
        out.attainable = false;
        out.sample_size = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    std::size_t found;
    if (met_at(0)) {
        found = 0;
    } else {
        // Invariant of the bisection: lo not met, hi met.
        std::size_t lo = 0, hi = grid.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            (met_at(mid) ? hi : lo) = mid;
        }
        found = hi;
    }
    // The bisection is only valid for a monotone criterion; verify, and fall
    // back to a full scan of the grid when the assumption does not hold.
    for (std::size_t i = 0; i < found; ++i) {
        if (met_at(i)) {
            out.method = "grid-scan";
            found = i;
            break;
        }
    }
    out.attainable = true;
    out.sample_size = grid[found];
    return out;
}

MinSampleResult min_sample_size(const CovariateRecord& record,
                                const RunConfig& cfg, CriterionId criterion,
                                double target, double n_lo, double n_hi,
                                int points) {
    if (!std::isfinite(target) || target <= 0.0) {
        throw std::domain_error("target must be positive and finite");
    }
    if (criterion == CriterionId::BFDR_INPUT) {
        throw std::domain_error(
            "bfdr is a cross-covariate selection; no per-covariate sample-size "
            "target is defined for it");
    }
    const std::vector<double> grid = log_spaced_grid(n_lo, n_hi, points);
    const std::vector<CovariateRecord> one{record};
    const double threshold =
        criterion == CriterionId::BF ? std::log(target) : target;
    const auto met = [&](double n) {
        const auto evals = evaluate_records(one, cfg, n);
        const PointValue p = point_for(evals.front(), criterion);
        if (!p.applicable || std::isnan(p.value)) {
            return false;
        }
        return p.value >= threshold;
    };
    return min_sample_size_over(met, grid);
}

}  // namespace metaplan
