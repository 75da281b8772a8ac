#include "metaplan/stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace metaplan {

namespace {

constexpr double log_sqrt_2pi = 0.91893853320467274178;  // log(sqrt(2*pi))
constexpr double inv_sqrt_2 = std::numbers::sqrt2 / 2.0;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

void require_variance(double variance) {
    require_finite(variance, "variance");
    if (variance <= 0.0) {
        throw std::domain_error("variance must be positive");
    }
}

// Inverse standard normal CDF, algorithm AS 241 (Wichura 1988), the PPND16
// double-precision coefficient set: accurate to ~1 part in 1e16 before the
// polishing step applied by normal_quantile.
double quantile_as241(double p) {
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -z : z;
}

}  // namespace

double normal_pdf(double x, double mean, double variance) {
    require_finite(x, "x");
    require_finite(mean, "mean");
    require_variance(variance);
    const double sd = std::sqrt(variance);
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z - log_sqrt_2pi) / sd;
}

double normal_log_pdf(double x, double mean, double variance) {
    require_finite(x, "x");
    require_finite(mean, "mean");
    require_variance(variance);
    const double d = x - mean;
    return -0.5 * (std::log(variance) + d * d / variance) - log_sqrt_2pi;
}

double normal_cdf(double x) {
    require_finite(x, "x");
    return 0.5 * std::erfc(-x * inv_sqrt_2);
}

double normal_log_survival(double x) {
    require_finite(x, "x");
    if (x < 30.0) {
        return std::log(0.5 * std::erfc(x * inv_sqrt_2));
    }
    // Abramowitz & Stegun 26.2.12: 1 - Phi(x) = phi(x)/x * [1 - 1/x^2 + ...]
    const double inv_x2 = 1.0 / (x * x);
    double term = -inv_x2;
    double sum = 0.0;
    for (int k = 1; k < 20 && std::fabs(term) > 1e-18; ++k) {
        sum += term;
        term *= -(2.0 * k + 1.0) * inv_x2;
    }
    return -0.5 * x * x - log_sqrt_2pi - std::log(x) + std::log1p(sum);
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("normal_quantile: p must lie strictly in (0, 1)");
    }
    double x = quantile_as241(p);
    // One Halley step against normal_cdf tightens the approximation to the
    // rounding floor of the CDF itself.
    const double pdf = std::exp(-0.5 * x * x - log_sqrt_2pi);
    if (pdf > 0.0) {
        const double u = (normal_cdf(x) - p) / pdf;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

NormalSummary pool_fixed(std::span<const NormalSummary> estimates) {
    if (estimates.empty()) {
        throw std::domain_error("pool_fixed: no estimates to combine");
    }
    double precision = 0.0;
    double weighted_mean = 0.0;
    for (const NormalSummary& e : estimates) {
        require_finite(e.mean, "mean");
        require_variance(e.variance);
        const double w = 1.0 / e.variance;
        precision += w;
        weighted_mean += w * e.mean;
    }
    return {weighted_mean / precision, 1.0 / precision};
}

}  // namespace metaplan
