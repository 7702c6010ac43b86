#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fxlab/map.hpp"
#include "fxlab/params.hpp"

namespace fxlab {

enum class OrbitClass : std::uint8_t {
    divergent = 0,
    P1 = 1,
    P2 = 2,
    P3 = 3,
    other = 4, // bounded but unresolved within t_max (e.g. post-flip attractors)
};

const char* to_string(OrbitClass c);

struct OrbitCaps {
    std::size_t t_max = 5000;
    double eps_conv = 1e-6; // per-coordinate convergence radius
    double e_max = 1e6;     // divergence threshold on the exchange-rate deviation
    std::size_t dwell = 10; // consecutive in-radius steps required
};

/// Deterministic-orbit classification of one initial condition. An orbit is
/// assigned to an equilibrium after `dwell` consecutive steps within
/// eps_conv of it (both coordinates), `divergent` once the exchange-rate
/// deviation exceeds e_max, and `other` on t_max exhaustion.
OrbitClass classify_orbit(const ModelParams& p, const MarketState& init,
                          const OrbitCaps& caps = {});

/// Rectangular window of initial conditions, given by center and halfwidth
/// per axis. Centering the window on (e1_bar, dy_bp) keeps the grid exactly
/// symmetric under the map's reflection through P1.
struct BasinWindow {
    double e_center = 0.0;
    double e_halfwidth = 0.8;
    double dy_center = 0.0;
    double dy_halfwidth = 0.05;
};

struct BasinGrid {
    ModelParams params;
    BasinWindow window;
    std::size_t nx = 0, ny = 0;
    OrbitCaps caps;
    std::vector<double> e_centers;  // size nx
    std::vector<double> dy_centers; // size ny
    std::vector<OrbitClass> cells;  // row-major: cells[j * nx + i]

    OrbitClass at(std::size_t i, std::size_t j) const { return cells[j * nx + i]; }
};

/// Classifies every cell center of an nx-by-ny grid over the window.
/// Cells are independent work items handed to `workers` threads; assembly
/// is by cell index, so the grid is identical for any worker count.
BasinGrid basin_grid(const ModelParams& p, const BasinWindow& window, std::size_t nx,
                     std::size_t ny, const OrbitCaps& caps = {}, unsigned workers = 1);

} // namespace fxlab
