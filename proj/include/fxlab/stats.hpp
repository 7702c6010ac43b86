#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace fxlab {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;     // sample standard deviation (n-1)
    double skew = 0.0;   // m3 / m2^(3/2), bias-uncorrected central moments
    double exkurt = 0.0; // m4 / m2^2 - 3
};

/// Sample moments; throws std::domain_error on zero variance and
/// std::invalid_argument for n < 2.
Moments moments(std::span<const double> x);

struct AdResult {
    double a2 = 0.0;      // Anderson-Darling statistic, mean/sd estimated
    double a2_star = 0.0; // small-sample corrected: a2 * (1 + 0.75/n + 2.25/n^2)
    bool reject5 = false; // a2_star > 0.752
};

/// Anderson-Darling normality test for the estimated-parameters case.
/// The 5% critical value 0.752 and the correction factor follow
/// D'Agostino & Stephens, "Goodness-of-Fit Techniques" (1986), Table 4.7.
/// Requires n >= 8 and positive variance; ties are allowed.
AdResult anderson_darling(std::span<const double> x);

struct SeriesStats {
    std::size_t n = 0;
    Moments moments;
    AdResult ad;
};

SeriesStats series_stats(std::span<const double> x);

/// QQ pairs (theoretical, sample) against the normal, sample sorted.
/// standardized=true scales theoretical quantiles by the sample mean/sd
/// (the default); standardized=false pairs raw standard-normal quantiles
/// with the untouched order statistics.
std::vector<std::pair<double, double>> qq_normal(std::span<const double> x,
                                                 bool standardized = true);

/// Standard normal CDF via erfc; accurate to ~1 ulp.
double normal_cdf(double x);

/// Standard normal quantile, Wichura's AS 241 (PPND16); relative error
/// below 1e-15 for p in (0, 1). Returns +/-inf at the endpoints.
double normal_quantile(double p);

} // namespace fxlab
