#include "fxlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fxlab {

Moments moments(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("moments: need at least 2 observations");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, ss = 0.0;
    for (double v : x) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        ss += d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 <= 0.0) throw std::domain_error("moments: degenerate series (zero variance)");
    Moments out;
    out.mean = mean;
    out.sd = std::sqrt(ss / static_cast<double>(n - 1));
    out.skew = m3 / std::pow(m2, 1.5);
    out.exkurt = m4 / (m2 * m2) - 3.0;
    return out;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

// Wichura (1988), algorithm AS 241, PPND16. Max relative error about 1e-15.
double normal_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 8.36339239320000000000e-1);
    }
    return q < 0.0 ? -v : v;
}

AdResult anderson_darling(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 8) throw std::invalid_argument("anderson_darling: need at least 8 observations");
    const Moments m = moments(x);
    std::vector<double> z(x.begin(), x.end());
    std::sort(z.begin(), z.end());
    const double dn = static_cast<double>(n);
    double a2 = -dn;
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = normal_cdf((z[i] - m.mean) / m.sd);
        const double hi = normal_cdf((z[n - 1 - i] - m.mean) / m.sd);
        // log arguments clamped away from 0 for extreme tail points
        const double l1 = std::log(std::max(lo, 1e-300));
        const double l2 = std::log(std::max(1.0 - hi, 1e-300));
        a2 -= (2.0 * static_cast<double>(i + 1) - 1.0) / dn * (l1 + l2);
    }
    AdResult out;
    out.a2 = a2;
    out.a2_star = a2 * (1.0 + 0.75 / dn + 2.25 / (dn * dn));
    out.reject5 = out.a2_star > 0.752;
    return out;
}

SeriesStats series_stats(std::span<const double> x) {
    SeriesStats s;
    s.n = x.size();
    s.moments = moments(x);
    s.ad = anderson_darling(x);
    return s;
}

std::vector<std::pair<double, double>> qq_normal(std::span<const double> x, bool standardized) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("qq_normal: need at least 2 observations");
    std::vector<double> z(x.begin(), x.end());
    std::sort(z.begin(), z.end());
    double mean = 0.0, sd = 1.0;
    if (standardized) {
        const Moments m = moments(x);
        mean = m.mean;
        sd = m.sd;
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        out.emplace_back(normal_quantile(p) * sd + mean, z[i]);
    }
    return out;
}

} // namespace fxlab
