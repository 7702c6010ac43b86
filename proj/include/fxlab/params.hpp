#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fxlab {

/// Full parameter set of the FX/growth model.
///
/// Speculators split into fundamentalists (w_fund, cubic mean reversion),
/// chartists (w_chart, linear trend chasing relative to the expected
/// fundamental) and extrapolators (w_extra, chasing the last observed FX
/// change). Firms split into a flexible share w_flex that adjusts capital
/// accumulation at speed beta and a rigid remainder.
struct ModelParams {
    double mu = 4.5;             // domestic speculator reaction, >= 0
    double rho = 4.5;            // foreign speculator reaction, >= 0
    double w_fund = 0.9;         // share of fundamentalists, in [0,1]
    double w_chart = 0.1;        // share of chartists, in [0,1]
    double w_extra = 0.0;        // share of trend extrapolators, in [0,1]
    double w_flex = 0.1;         // share of flexible firms, in (0,1)
    double beta = 0.1;           // firm adjustment speed, in (0,1)
    double omega = 0.01;         // weight of past growth in the expected fundamental, in (0,1)
    double theta = 0.3;          // non-speculative share of the FX market, in (0,1)
    double pi_elasticity = 2.0;  // income elasticity of demand for foreign assets, > 0
    double dy_bp = 0.00003;      // steady-state trade-multiplier growth per step (day)
    std::optional<double> dz_ns; // exogenous non-speculative FX supply growth; must equal dy_bp * pi
    double sigma = 0.02;         // std. dev. of the fundamental-expectation shock

    /// (1-theta)(mu+rho) / (theta*pi): pass-through of speculative trade
    /// into the market-clearing growth rate.
    double gamma() const {
        return (1.0 - theta) * (mu + rho) / (theta * pi_elasticity);
    }

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// Copy of `p` with the named scalar field set to `value`.
///
/// Axis names: mu, rho, w_fund, w_chart, w_extra, w_flex, beta, omega,
/// theta, pi_elasticity, dy_bp, sigma. Setting a speculator weight keeps
/// the shares summing to one: w_fund and w_extra trade against w_chart,
/// and w_chart trades against w_fund (the convention used by the sweep
/// experiments). Throws std::invalid_argument for unknown names.
ModelParams with_axis(const ModelParams& p, const std::string& axis, double value);

} // namespace fxlab
