#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fxlab/equilibria.hpp"
#include "fxlab/params.hpp"

namespace fxlab {

struct SweepProtocol {
    std::size_t transient = 2000; // steps discarded before sampling
    std::size_t samples = 200;    // post-transient e values kept per branch
    double offset_e = 1e-3;       // seed displacement from the equilibrium
    double offset_dy = 0.0;
    double cluster_tol = 1e-9;    // gap that separates distinct orbit points
    double e_max = 1e6;
};

struct SweepBranch {
    bool diverged = false;
    std::vector<double> e_samples; // empty iff diverged
};

struct SweepPoint {
    double value = 0.0;
    SweepBranch near_p2; // seeded at the e-positive equilibrium
    SweepBranch near_p3;
};

struct SweepResult {
    std::string axis;
    SweepProtocol protocol;
    std::vector<SweepPoint> points;
};

/// One-parameter bifurcation-diagram data: for each grid value the
/// deterministic skeleton is run from both off-PPP equilibria (from P1 when
/// they do not exist) and post-transient e values are recorded. Grid cells
/// are independent; `workers` threads split them with results merged by
/// index, so output does not depend on the worker count.
SweepResult sweep(const ModelParams& p, const std::string& axis, double lo, double hi,
                  std::size_t n_points, const SweepProtocol& proto = {}, unsigned workers = 1);

/// Distinct values among a branch sample under the protocol's clustering
/// tolerance; 0 for a diverged branch. A period-k orbit reports k.
std::size_t count_orbit_points(const SweepBranch& branch, double cluster_tol);

enum class RegionLabel {
    stable,
    flip_crossed,
    ns_crossed,
    fold_crossed,
    multiple, // more than one condition violated (or the cubic bound 3-b)
    no_p23,   // off-PPP equilibria do not exist at these parameters
};

const char* to_string(RegionLabel label);

struct RegionCell {
    NamedConditions conditions;
    RegionLabel label = RegionLabel::stable;
};

struct RegionGrid {
    std::string axis1, axis2;
    std::vector<double> grid1, grid2;
    std::vector<RegionCell> cells; // row-major: cells[i2 * grid1.size() + i1]

    const RegionCell& at(std::size_t i1, std::size_t i2) const {
        return cells[i2 * grid1.size() + i1];
    }
};

/// Two-parameter analytic stability map at the off-PPP equilibria.
RegionGrid boundary_scan(const ModelParams& p, const std::string& axis1, double lo1,
                         double hi1, std::size_t n1, const std::string& axis2, double lo2,
                         double hi2, std::size_t n2);

} // namespace fxlab
