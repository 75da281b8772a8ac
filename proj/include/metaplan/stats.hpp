#pragma once

#include <span>

namespace metaplan {

// A normal evidence state: point estimate and its squared standard error.
// Doubles as a per-study weighted estimate in inverse-variance pooling.
struct NormalSummary {
    double mean = 0.0;
    double variance = 1.0;
};

// Density of N(mean, variance) at x.  Throws std::domain_error on non-finite
// input or variance <= 0.
double normal_pdf(double x, double mean, double variance);

// log of normal_pdf; the tail-safe form used wherever ratios of very small
// densities are needed.
double normal_log_pdf(double x, double mean, double variance);

// Standard normal distribution function Phi(x).
double normal_cdf(double x);

// log(1 - Phi(x)), stable far into the upper tail where 1 - Phi(x)
// underflows (asymptotic expansion beyond the erfc range).
double normal_log_survival(double x);

// Inverse of normal_cdf on (0, 1).  Throws std::domain_error outside.
double normal_quantile(double p);

// Fixed-effects inverse-variance combination: precisions add, means are
// precision-weighted.  Throws std::domain_error on an empty list or any
// invalid estimate.
NormalSummary pool_fixed(std::span<const NormalSummary> estimates);

}  // namespace metaplan
