#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "generated/expected_values.hpp"
#include "metaplan/stats.hpp"

using doctest::Approx;
using metaplan::NormalSummary;
using metaplan::normal_cdf;
using metaplan::normal_log_pdf;
using metaplan::normal_log_survival;
using metaplan::normal_pdf;
using metaplan::normal_quantile;
using metaplan::pool_fixed;
namespace expected = metaplan::expected;

namespace {
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
}

TEST_CASE("cdf matches reference points") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(std::abs(normal_cdf(3.393) - expected::cdf_at_3393) < 5e-16);
    CHECK(normal_cdf(-3.393) ==
          Approx(1.0 - expected::cdf_at_3393).epsilon(1e-12));
    CHECK(normal_cdf(1.96) == Approx(0.9750021048517795).epsilon(1e-14));
    CHECK(normal_cdf(-40.0) == 0.0);
    CHECK(normal_cdf(40.0) == 1.0);
}

TEST_CASE("cdf is monotone and symmetric") {
    double prev = 0.0;
    for (double x = -8.0; x <= 8.0; x += 0.0625) {
        const double p = normal_cdf(x);
        CHECK(p >= prev);
        prev = p;
        CHECK(std::abs(normal_cdf(-x) + p - 1.0) < 1e-15);
    }
}

TEST_CASE("quantile matches reference points") {
    CHECK(std::abs(normal_quantile(0.5)) < 1e-16);
    // Rounding p itself to a double shifts the exact quantile by up to
    // ulp(p) / (2 phi(x)); the checks below allow one such ulp plus noise.
    CHECK(std::abs(normal_quantile(0.975) - expected::quantile_p975) < 4e-15);
    // the two-sided critical value at the default evidence level, where
    // phi(x) ~ 8.8e-4 stretches that bound to ~1.3e-13
    CHECK(std::abs(normal_quantile(1.0 - 6.9e-4 / 2) -
                   expected::critical_value) < 1.5e-13);
}

TEST_CASE("cdf of quantile recovers the probability to twelve digits") {
    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> probs = {1e-300, 1e-150, 1e-50, 1e-12, 1e-6,
                                 1e-3,   0.25,   0.5,   0.75,  0.999};
    for (int i = 0; i < 500; ++i) {
        probs.push_back(unit(rng));
    }
    for (double p : probs) {
        const double x = normal_quantile(p);
        const double back = normal_cdf(x);
        if (p <= 0.5) {
            CHECK(std::abs(back - p) <= 1e-12 * p);
        } else {
            CHECK(std::abs(back - p) <= 1e-12);
        }
    }
}

TEST_CASE("quantile of cdf recovers the point within its conditioning bound") {
    // Rounding the probability p = Phi(x) to a double already perturbs the
    // recovered point by about ulp(p) / (2 phi(x)); no inverse can do better
    // from the rounded p, so that is the yardstick the round trip is held to.
    for (double x = -6.0; x <= 6.0; x += 0.03125) {
        const double p = normal_cdf(x);
        const double back = normal_quantile(p);
        const double ulp_p = std::nextafter(p, 2.0) - p;
        const double phi = normal_pdf(x, 0.0, 1.0);
        const double tol = 1e-13 * std::max(1.0, std::abs(x)) + 4.0 * ulp_p / phi;
        CHECK(std::abs(back - x) <= tol);
    }
}

TEST_CASE("quantile rejects probabilities outside the open unit interval") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(-0.25), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.25), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(std::nan("")), std::domain_error);
}

TEST_CASE("log survival agrees with the cdf complement where both exist") {
    for (double x = -8.0; x <= 37.0; x += 0.25) {
        const double complement = normal_cdf(-x);
        REQUIRE(complement > 0.0);
        CHECK(normal_log_survival(x) ==
              Approx(std::log(complement)).epsilon(1e-13));
    }
    CHECK(normal_log_survival(0.0) == Approx(std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("log survival stays finite and bracketed deep in the tail") {
    // phi(x)/x (1 - 1/x^2) < 1 - Phi(x) < phi(x)/x for x > 1
    for (double x : {2.0, 5.0, 10.0, 20.0, 30.0, 40.0, 80.0, 400.0}) {
        const double ls = normal_log_survival(x);
        CHECK(std::isfinite(ls));
        const double upper = -0.5 * x * x - kLogSqrt2Pi - std::log(x);
        const double lower = upper + std::log1p(-1.0 / (x * x));
        CHECK(ls <= upper);
        CHECK(ls >= lower);
    }
    // the expansion takes over from the erfc form without a jump
    const double left = normal_log_survival(29.9999999);
    const double right = normal_log_survival(30.0000001);
    CHECK(left == Approx(right).epsilon(1e-7));
}

TEST_CASE("pdf matches the reference density five deviations out") {
    CHECK(normal_pdf(0.045, 0.0, 8.1e-5) ==
          Approx(expected::density_at_5sd).epsilon(1e-13));
    CHECK(normal_log_pdf(0.045, 0.0, 8.1e-5) ==
          Approx(std::log(expected::density_at_5sd)).epsilon(1e-13));
}

TEST_CASE("log pdf keeps working after the density underflows") {
    // The density underflows to zero near 38.6 deviations; its log does not.
    CHECK(normal_pdf(40.0, 0.0, 1.0) == 0.0);
    CHECK(normal_log_pdf(40.0, 0.0, 1.0) ==
          Approx(-800.0 - kLogSqrt2Pi).epsilon(1e-15));
    CHECK(normal_log_pdf(-40.0, 0.0, 1.0) ==
          Approx(-800.0 - kLogSqrt2Pi).epsilon(1e-15));
    // log-pdf differences at the mean reduce to mean^2 / (2 v) exactly
    const double diff =
        normal_log_pdf(0.086, 0.086, 1e-4) - normal_log_pdf(0.086, 0.0, 1e-4);
    CHECK(diff == Approx(0.086 * 0.086 / 2e-4).epsilon(1e-15));
}

TEST_CASE("pdf and log pdf reject invalid arguments") {
    CHECK_THROWS_AS(normal_pdf(0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(normal_pdf(0.0, 0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(normal_pdf(std::nan(""), 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(normal_log_pdf(0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(
        normal_log_pdf(0.0, std::numeric_limits<double>::infinity(), 1.0),
        std::domain_error);
}

TEST_CASE("pooling matches the hand-checked two-panel combination") {
    const std::array<NormalSummary, 2> panels{{
        {0.193, 0.007 * 0.007},  // discovery
        {0.086, 0.010 * 0.010},  // replication
    }};
    const NormalSummary pooled = pool_fixed(panels);
    CHECK(pooled.mean == Approx(expected::crp_pooled_mean).epsilon(1e-14));
    CHECK(pooled.variance ==
          Approx(expected::crp_pooled_variance).epsilon(1e-14));
}

TEST_CASE("pooling laws: identity, symmetry, variance reduction") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> means(-2.0, 2.0);
    std::uniform_real_distribution<double> vars(1e-6, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<NormalSummary> parts;
        const int k = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < k; ++i) {
            parts.push_back({means(rng), vars(rng)});
        }
        const NormalSummary pooled = pool_fixed(parts);
        if (k == 1) {
            CHECK(pooled.mean == Approx(parts[0].mean));
            CHECK(pooled.variance == Approx(parts[0].variance));
        }
        double min_var = parts[0].variance;
        for (const auto& p : parts) {
            min_var = std::min(min_var, p.variance);
        }
        CHECK(pooled.variance <= min_var * (1.0 + 1e-12));

        std::shuffle(parts.begin(), parts.end(), rng);
        const NormalSummary again = pool_fixed(parts);
        CHECK(again.mean == Approx(pooled.mean).epsilon(1e-12));
        CHECK(again.variance == Approx(pooled.variance).epsilon(1e-12));
    }
}

TEST_CASE("pooling rejects empty and invalid inputs") {
    CHECK_THROWS_AS(pool_fixed({}), std::domain_error);
    const std::array<NormalSummary, 1> bad{{{0.0, -1.0}}};
    CHECK_THROWS_AS(pool_fixed(bad), std::domain_error);
}
