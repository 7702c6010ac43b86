#pragma once

#include <cmath>

#include "fxlab/params.hpp"

namespace fxlab {

/// One point of the map: log exchange rate, output growth over the current
/// step, and the lagged log exchange rate feeding the extrapolator term.
struct MarketState {
    double e = 0.0;      // log exchange rate (domestic currency per USD)
    double dy = 0.0;     // output growth this step (log difference per day)
    double e_prev = 0.0; // previous period's log exchange rate

    bool finite() const {
        return std::isfinite(e) && std::isfinite(dy) && std::isfinite(e_prev);
    }
};

/// Expected fundamental exchange rate: the PPP anchor (zero in log terms)
/// shifted by past growth and the current expectation shock.
inline double expected_fundamental(double dy_prev, double eps, const ModelParams& p) {
    return -p.omega * dy_prev + eps;
}

/// Aggregate speculative trade:
///   w_fund*(E[f]-e)^3 + w_chart*(e-E[f]) + w_extra*(e-e_prev)
inline double speculative_trade(const MarketState& s, double eps, const ModelParams& p) {
    const double ef = expected_fundamental(s.dy, eps, p);
    const double dev = ef - s.e;
    return p.w_fund * dev * dev * dev + p.w_chart * (s.e - ef) + p.w_extra * (s.e - s.e_prev);
}

/// Output growth that clears the FX market at the current state. Equals the
/// trade-multiplier rate when speculative trade vanishes.
inline double market_clearing_growth(const MarketState& s, double eps, const ModelParams& p) {
    const double trade = speculative_trade(s, eps, p);
    const double base = p.dz_ns ? *p.dz_ns / p.pi_elasticity : p.dy_bp;
    return base - ((1.0 - p.theta) / p.theta) * ((p.mu + p.rho) / p.pi_elasticity) * trade;
}

/// One step of the map. The same shock draw feeds both equations; both
/// contain the same expected fundamental. A non-finite result is returned
/// as-is so callers can treat divergence as data.
inline MarketState step(const MarketState& s, double eps, const ModelParams& p) {
    const double trade = speculative_trade(s, eps, p);
    MarketState out;
    out.e = s.e + (p.mu + p.rho) * trade;
    out.dy = s.dy + p.w_flex * p.beta * (p.dy_bp - p.gamma() * trade - s.dy);
    out.e_prev = s.e;
    return out;
}

} // namespace fxlab
