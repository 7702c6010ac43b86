#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fxlab/map.hpp"
#include "fxlab/params.hpp"

namespace fxlab {

/// A simulated path. Entry t of the series is the state after step t+1
/// from `init` together with the shock used in that step, so replaying
/// (params, init, seed) reproduces the arrays bit for bit.
struct Trajectory {
    ModelParams params;
    MarketState init;
    std::optional<std::uint64_t> seed;
    double e_max = 1e6;

    std::vector<double> e;
    std::vector<double> dy;
    std::vector<double> eps;

    /// 1-based index of the first divergent step (|e| beyond e_max or
    /// non-finite); the series stop just before it.
    std::optional<std::size_t> diverged_at;

    std::size_t steps() const { return e.size(); }

    /// Trajectory with the first `skip` recorded steps dropped and `init`
    /// moved forward accordingly. Used to discard burn-in before statistics.
    Trajectory tail(std::size_t skip) const;
};

/// Iterates the map for `horizon` steps. Shocks are i.i.d. N(0, sigma)
/// drawn from the seeded generator in rng.hpp; with sigma = 0 or no seed
/// the shock series is identically zero and no draws are consumed, so the
/// deterministic skeleton is bitwise independent of the seed.
Trajectory simulate(const ModelParams& p, const MarketState& init, std::size_t horizon,
                    std::optional<std::uint64_t> seed = std::nullopt, double e_max = 1e6);

struct Aggregates {
    std::vector<double> fx_returns;    // exp(e_t - e_{t-1}) - 1, level returns
    std::vector<double> annual_growth; // dy summed over consecutive year_length windows
    std::string warning;               // set when the path is shorter than one year
};

/// Daily FX returns and annual output growth from a recorded path.
Aggregates aggregate(const Trajectory& traj, std::size_t year_length = 365);

} // namespace fxlab
