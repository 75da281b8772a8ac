#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "generated/expected_values.hpp"
#include "metaplan/evidence.hpp"

using doctest::Approx;
using metaplan::init_spike_slab;
using metaplan::NormalSummary;
using metaplan::project_plain;
using metaplan::project_spike_slab;
using metaplan::project_variance_fixed;
using metaplan::project_variance_random;
using metaplan::ProjectedEvidence;
using metaplan::SpikeSlabState;
using metaplan::StudyPlan;
namespace expected = metaplan::expected;

namespace {
constexpr double kPi0 = 1e-6;
}

TEST_CASE("fixed-effects projection adds precisions") {
    CHECK(project_variance_fixed(1.0, 1.0) == Approx(0.5));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> vars(1e-8, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double s = vars(rng);
        const double v = vars(rng);
        const double s2 = project_variance_fixed(s, v);
        CHECK(1.0 / s2 == Approx(1.0 / s + 1.0 / v).epsilon(1e-12));
        CHECK(s2 < s);
        CHECK(s2 < v);
    }
}

TEST_CASE("heterogeneity caps what a single study can add") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> vars(1e-8, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double s = vars(rng);
        const double v = vars(rng);
        CHECK(project_variance_random(s, v, 0.0) ==
              Approx(project_variance_fixed(s, v)).epsilon(1e-14));
        const double g_small = project_variance_random(s, v, 0.1);
        const double g_large = project_variance_random(s, v, 10.0);
        CHECK(g_small > project_variance_fixed(s, v));
        CHECK(g_large > g_small);
        CHECK(g_large < s);  // some information always arrives
        // an infinitely heterogeneous study adds nothing
        CHECK(project_variance_random(s, v, 1e18) == Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("initialization reproduces the frozen log-odds chain") {
    for (const auto& row : expected::chains) {
        const SpikeSlabState st =
            init_spike_slab(kPi0, {row.mu1, row.s1});
        CHECK(st.log_odds == Approx(row.log_odds1).epsilon(1e-12));
        CHECK(st.inclusion_prob() == Approx(row.pi1).epsilon(1e-11));
        CHECK(st.slab.mean == row.mu1);
        CHECK(st.slab.variance == row.s1);
    }
}

TEST_CASE("projection reproduces the frozen updated chain") {
    for (const auto& row : expected::chains) {
        const SpikeSlabState st = init_spike_slab(kPi0, {row.mu1, row.s1});
        const ProjectedEvidence proj =
            project_spike_slab(st, StudyPlan::with_variance(row.v));
        REQUIRE(proj.spike_after.has_value());
        CHECK(proj.spike_after->log_odds ==
              Approx(row.log_odds2).epsilon(1e-12));
        CHECK(proj.spike_after->inclusion_prob() ==
              Approx(row.pi2).epsilon(1e-11));
        CHECK(proj.after.variance == Approx(row.s2).epsilon(1e-14));
        CHECK(proj.after.mean == row.mu1);
        CHECK(proj.planned_observation.mean == row.mu1);
        CHECK(proj.planned_observation.variance == row.v);
        REQUIRE(proj.spike_before.has_value());
        CHECK(proj.spike_before->log_odds == st.log_odds);
    }
}

TEST_CASE("projections compose: two half studies equal one full study") {
    // Adding a study of variance v and then another of variance v must land
    // on the same slab state as one study of variance v/2 (precisions add),
    // and the log-odds gains also add.
    const NormalSummary start{0.072, 2.89e-4};
    const SpikeSlabState st = init_spike_slab(kPi0, start);
    const StudyPlan one = StudyPlan::with_variance(2.89e-4);
    const StudyPlan half = StudyPlan::with_variance(2.89e-4 / 2);

    const ProjectedEvidence first = project_spike_slab(st, one);
    const ProjectedEvidence second =
        project_spike_slab(*first.spike_after, one);
    const ProjectedEvidence direct = project_spike_slab(st, half);

    CHECK(second.after.variance ==
          Approx(direct.after.variance).epsilon(1e-13));
    CHECK(second.spike_after->log_odds ==
          Approx(direct.spike_after->log_odds).epsilon(1e-13));
}

TEST_CASE("inclusion probability never decreases under projection") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> means(-0.5, 0.5);
    std::uniform_real_distribution<double> vars(1e-6, 1e-2);
    std::uniform_real_distribution<double> gammas(0.0, 1e-3);
    for (int i = 0; i < 300; ++i) {
        const SpikeSlabState st =
            init_spike_slab(kPi0, {means(rng), vars(rng)});
        const ProjectedEvidence proj = project_spike_slab(
            st, StudyPlan::with_variance(vars(rng), gammas(rng)));
        CHECK(proj.spike_after->log_odds >= st.log_odds);
    }
    // a zero effect gains no evidence at all
    const SpikeSlabState null_st = init_spike_slab(kPi0, {0.0, 1e-4});
    const ProjectedEvidence null_proj =
        project_spike_slab(null_st, StudyPlan::with_variance(1e-4));
    CHECK(null_proj.spike_after->log_odds == null_st.log_odds);
}

TEST_CASE("heterogeneity shrinks the log-odds gain") {
    const SpikeSlabState st = init_spike_slab(kPi0, {0.045, 1e-4});
    const double gain_fixed =
        project_spike_slab(st, StudyPlan::with_variance(1e-4))
            .spike_after->log_odds -
        st.log_odds;
    const double gain_hetero =
        project_spike_slab(st, StudyPlan::with_variance(1e-4, 5e-4))
            .spike_after->log_odds -
        st.log_odds;
    CHECK(gain_hetero < gain_fixed);
    CHECK(gain_hetero > 0.0);
    // mu^2 / (2 (v + gamma^2)) exactly
    CHECK(gain_hetero == Approx(0.045 * 0.045 / (2 * 6e-4)).epsilon(1e-13));
}

TEST_CASE("sample-size plans scale like the reference study") {
    const StudyPlan ref = StudyPlan::with_sample_size(16540.0, 16540.0, 1e-4);
    CHECK(ref.within_variance == Approx(1e-4).epsilon(1e-15));
    const StudyPlan quarter = StudyPlan::with_sample_size(4135.0, 16540.0, 1e-4);
    CHECK(quarter.within_variance == Approx(4e-4).epsilon(1e-15));
    const StudyPlan big = StudyPlan::with_sample_size(165400.0, 16540.0, 1e-4);
    CHECK(big.within_variance == Approx(1e-5).epsilon(1e-15));
    const StudyPlan wide = StudyPlan::with_sample_size(16540.0, 16540.0, 1e-4, 2e-4);
    CHECK(wide.effective_variance() == Approx(3e-4).epsilon(1e-15));
}

TEST_CASE("probability round trips through log-odds") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> unit(1e-12, 1.0 - 1e-12);
    for (int i = 0; i < 300; ++i) {
        const double pi = unit(rng);
        const SpikeSlabState st = SpikeSlabState::from_inclusion_prob(pi, {});
        CHECK(st.inclusion_prob() == Approx(pi).epsilon(1e-12));
        CHECK(st.inclusion_prob() + st.exclusion_prob() ==
              Approx(1.0).epsilon(1e-15));
    }
    CHECK(SpikeSlabState::from_inclusion_prob(0.0, {}).log_odds ==
          -std::numeric_limits<double>::infinity());
    CHECK(SpikeSlabState::from_inclusion_prob(1.0, {}).log_odds ==
          std::numeric_limits<double>::infinity());
    CHECK(SpikeSlabState::from_inclusion_prob(0.0, {}).exclusion_prob() == 1.0);
    CHECK_THROWS_AS(SpikeSlabState::from_inclusion_prob(-0.1, {}),
                    std::domain_error);
    CHECK_THROWS_AS(SpikeSlabState::from_inclusion_prob(1.1, {}),
                    std::domain_error);
}

TEST_CASE("extreme log-odds stay stable") {
    // far in the tails the complementary probability survives as a denormal
    // instead of cancelling to zero too early
    const SpikeSlabState sure{700.0, {}};
    CHECK(sure.inclusion_prob() == 1.0);
    CHECK(sure.exclusion_prob() > 0.0);
    CHECK(sure.exclusion_prob() == Approx(std::exp(-700.0)).epsilon(1e-12));
    const SpikeSlabState hopeless{-700.0, {}};
    CHECK(hopeless.exclusion_prob() == 1.0);
    CHECK(hopeless.inclusion_prob() > 0.0);
}

TEST_CASE("invalid states and plans are rejected") {
    CHECK_THROWS_AS(init_spike_slab(0.0, {0.1, 1e-4}), std::domain_error);
    CHECK_THROWS_AS(init_spike_slab(1.0, {0.1, 1e-4}), std::domain_error);
    CHECK_THROWS_AS(init_spike_slab(kPi0, {0.1, 0.0}), std::domain_error);
    CHECK_THROWS_AS(StudyPlan::with_variance(0.0), std::domain_error);
    CHECK_THROWS_AS(StudyPlan::with_variance(1e-4, -1.0), std::domain_error);
    CHECK_THROWS_AS(StudyPlan::with_sample_size(0.0, 16540.0, 1e-4),
                    std::domain_error);
    CHECK_THROWS_AS(StudyPlan::with_sample_size(1000.0, 0.0, 1e-4),
                    std::domain_error);
    CHECK_THROWS_AS(project_plain({0.0, -1.0}, StudyPlan::with_variance(1.0)),
                    std::domain_error);
}
