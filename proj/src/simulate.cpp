#include "fxlab/simulate.hpp"

#include <cmath>

#include "fxlab/rng.hpp"

namespace fxlab {

Trajectory Trajectory::tail(std::size_t skip) const {
    if (skip == 0) return *this;
    Trajectory out = *this;
    if (skip >= steps()) {
        out.init = steps() > 0
            ? MarketState{e.back(), dy.back(), steps() > 1 ? e[steps() - 2] : init.e}
            : init;
        out.e.clear();
        out.dy.clear();
        out.eps.clear();
        if (out.diverged_at) *out.diverged_at = (*out.diverged_at > steps()) ? 1 : 0;
        return out;
    }
    out.init = MarketState{e[skip - 1], dy[skip - 1], skip > 1 ? e[skip - 2] : init.e};
    out.e.assign(e.begin() + static_cast<std::ptrdiff_t>(skip), e.end());
    out.dy.assign(dy.begin() + static_cast<std::ptrdiff_t>(skip), dy.end());
    out.eps.assign(eps.begin() + static_cast<std::ptrdiff_t>(skip), eps.end());
    if (out.diverged_at) *out.diverged_at -= skip;
    return out;
}

Trajectory simulate(const ModelParams& p, const MarketState& init, std::size_t horizon,
                    std::optional<std::uint64_t> seed, double e_max) {
    p.validate();
    Trajectory traj;
    traj.params = p;
    traj.init = init;
    traj.seed = seed;
    traj.e_max = e_max;
    traj.e.reserve(horizon);
    traj.dy.reserve(horizon);
    traj.eps.reserve(horizon);

    const bool stochastic = seed.has_value() && p.sigma > 0.0;
    GaussianRng rng(seed.value_or(0));

    MarketState s = init;
    for (std::size_t t = 1; t <= horizon; ++t) {
        const double eps = stochastic ? rng.normal(p.sigma) : 0.0;
        s = step(s, eps, p);
        if (!s.finite() || std::fabs(s.e) > e_max) {
            traj.diverged_at = t;
            break;
        }
        traj.e.push_back(s.e);
        traj.dy.push_back(s.dy);
        traj.eps.push_back(eps);
    }
    return traj;
}

Aggregates aggregate(const Trajectory& traj, std::size_t year_length) {
    Aggregates out;
    const std::size_t n = traj.steps();
    out.fx_returns.reserve(n);
    double prev = traj.init.e;
    for (std::size_t t = 0; t < n; ++t) {
        out.fx_returns.push_back(std::exp(traj.e[t] - prev) - 1.0);
        prev = traj.e[t];
    }
    if (year_length == 0 || n < year_length) {
        out.warning = "trajectory shorter than one year; annual growth series is empty";
        return out;
    }
    const std::size_t years = n / year_length;
    out.annual_growth.reserve(years);
    for (std::size_t k = 0; k < years; ++k) {
        double sum = 0.0;
        for (std::size_t t = k * year_length; t < (k + 1) * year_length; ++t) sum += traj.dy[t];
        out.annual_growth.push_back(sum);
    }
    return out;
}

} // namespace fxlab
