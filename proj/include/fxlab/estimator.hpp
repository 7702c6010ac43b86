#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fxlab {

/// Annual macro panel for one country. All series in natural logarithms.
struct MacroDataset {
    std::vector<int> year;
    std::vector<double> y;   // log real GDP
    std::vector<double> m;   // log real imports
    std::vector<double> z;   // log real exports
    std::vector<double> rer; // log real exchange rate

    std::size_t size() const { return year.size(); }

    /// Throws std::invalid_argument on gaps, unordered years or non-finite
    /// values.
    void validate() const;

    /// Reads "year,y,m,z,rer" CSV (header required, decimal point, UTF-8).
    static MacroDataset from_csv(std::istream& in);
};

struct HpResult {
    std::vector<double> trend;
    std::vector<double> cycle; // series - trend
};

/// Hodrick-Prescott trend: minimizes sum (y - tau)^2 + lambda sum (d2 tau)^2,
/// solved exactly through the pentadiagonal normal equations (banded
/// Cholesky). lambda = 0 returns the series; lambda > 0 requires n >= 4.
HpResult hp_filter(std::span<const double> series, double lambda);

struct TvpHyper {
    double r_meas = 0.0;  // measurement noise variance
    double q_state = 0.0; // state (income elasticity) innovation variance
};

struct TvpEstimate {
    double eta = 0.0;           // price elasticity (constant augmented state)
    std::vector<double> pi;     // smoothed income elasticity per year
    std::vector<double> pi_se;  // smoothed standard error of pi
    std::vector<double> dy_bp;  // trade-multiplier growth; NaN in year 0
    std::vector<std::size_t> flagged; // years with pi <= 0 (reported, not enforced)
    TvpHyper hyper;
    double log_lik = 0.0;
    bool converged = true;
    std::string diagnostic;
    std::vector<double> search_ll; // best log-likelihood after each search step
};

/// Time-varying-parameter regression of trend imports on trend output and
/// the (unfiltered) real exchange rate:
///
///   m^T_t = eta * rer_t + pi_t * y^T_t + noise,   pi_t a random walk,
///
/// estimated with a linear Gaussian filter whose state stacks (pi_t, eta),
/// followed by full-sample (RTS) smoothing; trends use hp_filter(1600).
/// When `hyper` is absent the noise variances are chosen by maximum
/// likelihood: the measurement variance is concentrated out and the
/// signal-to-noise ratio q/r is searched over a log10 grid [-14, 6] refined
/// by golden section. The filter starts from a diffuse prior (variance
/// 1e8 relative to the measurement noise); the first two innovations are
/// excluded from the likelihood.
TvpEstimate kalman_tvp(const MacroDataset& data, std::optional<TvpHyper> hyper = {});

struct TradeMultiplier {
    std::vector<double> dy_bp;        // NaN at index 0 and at flagged years
    std::vector<std::size_t> flagged; // indices with pi <= 0
};

/// Trade-multiplier growth from log exports and the income elasticity:
/// first differences of the HP trend of z divided by pi_t.
TradeMultiplier trade_multiplier(std::span<const double> z, std::span<const double> pi,
                                 double lambda = 1600.0);

} // namespace fxlab
