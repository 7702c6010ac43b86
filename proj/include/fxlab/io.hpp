#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fxlab/basins.hpp"
#include "fxlab/bifurcation.hpp"
#include "fxlab/equilibria.hpp"
#include "fxlab/estimator.hpp"
#include "fxlab/params.hpp"
#include "fxlab/simulate.hpp"
#include "fxlab/stats.hpp"

namespace fxlab::io {

/// Shortest round-trip decimal form of a double (std::to_chars); "nan" /
/// "inf" spelled out. Keeps CSV output byte-stable across runs.
std::string format_double(double v);

nlohmann::json params_to_json(const ModelParams& p);
/// Strict: unknown keys are rejected.
ModelParams params_from_json(const nlohmann::json& j);

// trajectory CSV: "t,e,dy,eps"; row 0 is the initial state.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is); // series + init only

// sweep CSV: one row per (value, branch, sample); diverged branches emit a
// single row with diverged=1 and empty sample fields.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

// region grid: bare CSV matrix of label codes (rows follow axis2) plus a
// JSON legend carrying axes, codes and per-cell condition values.
void write_region_csv(std::ostream& os, const RegionGrid& grid);
nlohmann::json region_legend(const RegionGrid& grid);

// basin grid: bare CSV matrix of class codes (rows follow dy) plus a JSON
// legend with axes, codes, caps and parameters.
void write_basin_csv(std::ostream& os, const BasinGrid& grid);
nlohmann::json basin_legend(const BasinGrid& grid);

/// Run-length-encoded binary basin grid. Layout, little-endian:
///   magic "FXBG", u32 version = 1, u32 nx, u32 ny,
///   u32 run count, then per run { u8 class code, u32 length },
/// scanning row-major (dy-major) over cells.
void write_basin_rle(std::ostream& os, const BasinGrid& grid);

struct RleBasin {
    std::uint32_t nx = 0, ny = 0;
    std::vector<OrbitClass> cells;
};
RleBasin read_basin_rle(std::istream& is);

nlohmann::json stats_report(const SeriesStats& stats);
void write_qq_csv(std::ostream& os, const std::vector<std::pair<double, double>>& qq);

nlohmann::json equilibria_report(const EquilibriaResult& eqs);

// estimate CSV: "year,pi,se,dy_bp" (dy_bp empty where undefined).
void write_estimate_csv(std::ostream& os, const MacroDataset& data, const TvpEstimate& est);
nlohmann::json estimate_report(const TvpEstimate& est);

} // namespace fxlab::io
