#include "fxlab/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace fxlab::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::json params_to_json(const ModelParams& p) {
    nlohmann::json j{{"mu", p.mu},
                     {"rho", p.rho},
                     {"w_fund", p.w_fund},
                     {"w_chart", p.w_chart},
                     {"w_extra", p.w_extra},
                     {"w_flex", p.w_flex},
                     {"beta", p.beta},
                     {"omega", p.omega},
                     {"theta", p.theta},
                     {"pi_elasticity", p.pi_elasticity},
                     {"dy_bp", p.dy_bp},
                     {"sigma", p.sigma}};
    if (p.dz_ns) j["dz_ns"] = *p.dz_ns;
    return j;
}

ModelParams params_from_json(const nlohmann::json& j) {
    ModelParams p;
    for (const auto& [key, value] : j.items()) {
        if (key == "mu") p.mu = value.get<double>();
        else if (key == "rho") p.rho = value.get<double>();
        else if (key == "w_fund") p.w_fund = value.get<double>();
        else if (key == "w_chart") p.w_chart = value.get<double>();
        else if (key == "w_extra") p.w_extra = value.get<double>();
        else if (key == "w_flex") p.w_flex = value.get<double>();
        else if (key == "beta") p.beta = value.get<double>();
        else if (key == "omega") p.omega = value.get<double>();
        else if (key == "theta") p.theta = value.get<double>();
        else if (key == "pi_elasticity") p.pi_elasticity = value.get<double>();
        else if (key == "dy_bp") p.dy_bp = value.get<double>();
        else if (key == "dz_ns") { if (!value.is_null()) p.dz_ns = value.get<double>(); }
        else if (key == "sigma") p.sigma = value.get<double>();
        else throw std::invalid_argument("model config: unknown key '" + key + "'");
    }
    return p;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,e,dy,eps\n";
    os << "0," << format_double(traj.init.e) << ',' << format_double(traj.init.dy) << ",0\n";
    for (std::size_t t = 0; t < traj.steps(); ++t) {
        os << (t + 1) << ',' << format_double(traj.e[t]) << ',' << format_double(traj.dy[t])
           << ',' << format_double(traj.eps[t]) << '\n';
    }
}

Trajectory read_trajectory_csv(std::istream& is) {
    Trajectory traj;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("trajectory csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,e,dy,eps")
        throw std::invalid_argument("trajectory csv: expected header 't,e,dy,eps'");
    bool first = true;
    double prev_e = 0.0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        double vals[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(row, tok, ','))
                throw std::invalid_argument("trajectory csv: short row");
            vals[k] = std::stod(tok);
        }
        if (first) {
            traj.init = MarketState{vals[1], vals[2], vals[1]};
            first = false;
            continue;
        }
        traj.e.push_back(vals[1]);
        traj.dy.push_back(vals[2]);
        traj.eps.push_back(vals[3]);
    }
    if (first) throw std::invalid_argument("trajectory csv: no data rows");
    return traj;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << "value,branch,diverged,sample_index,e\n";
    for (const auto& pt : sweep.points) {
        const auto emit = [&](const char* name, const SweepBranch& b) {
            if (b.diverged) {
                os << format_double(pt.value) << ',' << name << ",1,,\n";
                return;
            }
            for (std::size_t k = 0; k < b.e_samples.size(); ++k)
                os << format_double(pt.value) << ',' << name << ",0," << k << ','
                   << format_double(b.e_samples[k]) << '\n';
        };
        emit("p2", pt.near_p2);
        emit("p3", pt.near_p3);
    }
}

void write_region_csv(std::ostream& os, const RegionGrid& grid) {
    const std::size_t n1 = grid.grid1.size();
    for (std::size_t j = 0; j < grid.grid2.size(); ++j) {
        for (std::size_t i = 0; i < n1; ++i) {
            if (i) os << ',';
            os << static_cast<int>(grid.at(i, j).label);
        }
        os << '\n';
    }
}

nlohmann::json region_legend(const RegionGrid& grid) {
    nlohmann::json codes;
    for (RegionLabel l : {RegionLabel::stable, RegionLabel::flip_crossed, RegionLabel::ns_crossed,
                          RegionLabel::fold_crossed, RegionLabel::multiple, RegionLabel::no_p23})
        codes[std::to_string(static_cast<int>(l))] = to_string(l);
    nlohmann::json conditions = nlohmann::json::array();
    for (std::size_t j = 0; j < grid.grid2.size(); ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t i = 0; i < grid.grid1.size(); ++i) {
            nlohmann::json cell;
            for (const auto& [name, value] : grid.at(i, j).conditions) cell[name] = value;
            row.push_back(std::move(cell));
        }
        conditions.push_back(std::move(row));
    }
    return nlohmann::json{{"axis1", grid.axis1},
                          {"axis2", grid.axis2},
                          {"grid1", grid.grid1},
                          {"grid2", grid.grid2},
                          {"codes", std::move(codes)},
                          {"conditions", std::move(conditions)}};
}

void write_basin_csv(std::ostream& os, const BasinGrid& grid) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            if (i) os << ',';
            os << static_cast<int>(grid.at(i, j));
        }
        os << '\n';
    }
}

nlohmann::json basin_legend(const BasinGrid& grid) {
    nlohmann::json codes;
    for (OrbitClass c : {OrbitClass::divergent, OrbitClass::P1, OrbitClass::P2, OrbitClass::P3,
                         OrbitClass::other})
        codes[std::to_string(static_cast<int>(c))] = to_string(c);
    return nlohmann::json{{"params", params_to_json(grid.params)},
                          {"window",
                           {{"e_center", grid.window.e_center},
                            {"e_halfwidth", grid.window.e_halfwidth},
                            {"dy_center", grid.window.dy_center},
                            {"dy_halfwidth", grid.window.dy_halfwidth}}},
                          {"nx", grid.nx},
                          {"ny", grid.ny},
                          {"caps",
                           {{"t_max", grid.caps.t_max},
                            {"eps_conv", grid.caps.eps_conv},
                            {"e_max", grid.caps.e_max},
                            {"dwell", grid.caps.dwell}}},
                          {"e_centers", grid.e_centers},
                          {"dy_centers", grid.dy_centers},
                          {"codes", std::move(codes)}};
}

namespace {

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!is) throw std::invalid_argument("basin rle: truncated input");
    return v;
}

} // namespace

void write_basin_rle(std::ostream& os, const BasinGrid& grid) {
    os.write("FXBG", 4);
    put<std::uint32_t>(os, 1);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.nx));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.ny));
    std::vector<std::pair<std::uint8_t, std::uint32_t>> runs;
    for (OrbitClass c : grid.cells) {
        const auto code = static_cast<std::uint8_t>(c);
        if (!runs.empty() && runs.back().first == code && runs.back().second < UINT32_MAX)
            ++runs.back().second;
        else
            runs.emplace_back(code, 1);
    }
    put<std::uint32_t>(os, static_cast<std::uint32_t>(runs.size()));
    for (const auto& [code, len] : runs) {
        put<std::uint8_t>(os, code);
        put<std::uint32_t>(os, len);
    }
}

RleBasin read_basin_rle(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "FXBG")
        throw std::invalid_argument("basin rle: bad magic");
    if (get<std::uint32_t>(is) != 1) throw std::invalid_argument("basin rle: unknown version");
    RleBasin out;
    out.nx = get<std::uint32_t>(is);
    out.ny = get<std::uint32_t>(is);
    const auto n_runs = get<std::uint32_t>(is);
    out.cells.reserve(static_cast<std::size_t>(out.nx) * out.ny);
    for (std::uint32_t k = 0; k < n_runs; ++k) {
        const auto code = get<std::uint8_t>(is);
        const auto len = get<std::uint32_t>(is);
        if (code > 4) throw std::invalid_argument("basin rle: bad class code");
        out.cells.insert(out.cells.end(), len, static_cast<OrbitClass>(code));
    }
    if (out.cells.size() != static_cast<std::size_t>(out.nx) * out.ny)
        throw std::invalid_argument("basin rle: cell count mismatch");
    return out;
}

nlohmann::json stats_report(const SeriesStats& stats) {
    return nlohmann::json{{"n", stats.n},
                          {"mean", stats.moments.mean},
                          {"sd", stats.moments.sd},
                          {"skewness", stats.moments.skew},
                          {"excess_kurtosis", stats.moments.exkurt},
                          {"ad_a2", stats.ad.a2},
                          {"ad_a2_star", stats.ad.a2_star},
                          {"ad_reject_5pct", stats.ad.reject5}};
}

void write_qq_csv(std::ostream& os, const std::vector<std::pair<double, double>>& qq) {
    os << "theoretical,sample\n";
    for (const auto& [t, s] : qq)
        os << format_double(t) << ',' << format_double(s) << '\n';
}

nlohmann::json equilibria_report(const EquilibriaResult& eqs) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& eq : eqs.points) {
        nlohmann::json conds;
        for (const auto& [name, value] : eq.conditions) conds[name] = value;
        nlohmann::json eig = nlohmann::json::array();
        for (const auto& ev : eq.eigenvalues)
            eig.push_back({{"re", ev.real()}, {"im", ev.imag()}, {"abs", std::abs(ev)}});
        nlohmann::json jac = nlohmann::json::array();
        for (int i = 0; i < eq.jacobian.n; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < eq.jacobian.n; ++j) row.push_back(eq.jacobian.at(i, j));
            jac.push_back(std::move(row));
        }
        points.push_back({{"label", to_string(eq.label)},
                          {"e_bar", eq.e_bar},
                          {"dy_bar", eq.dy_bar},
                          {"jacobian", std::move(jac)},
                          {"eigenvalues", std::move(eig)},
                          {"conditions", std::move(conds)},
                          {"classification", to_string(eq.classification)}});
    }
    nlohmann::json out{{"points", std::move(points)}};
    if (!eqs.note.empty()) out["note"] = eqs.note;
    return out;
}

void write_estimate_csv(std::ostream& os, const MacroDataset& data, const TvpEstimate& est) {
    os << "year,pi,se,dy_bp\n";
    for (std::size_t t = 0; t < data.size(); ++t) {
        os << data.year[t] << ',' << format_double(est.pi[t]) << ','
           << format_double(est.pi_se[t]) << ',';
        if (std::isfinite(est.dy_bp[t])) os << format_double(est.dy_bp[t]);
        os << '\n';
    }
}

nlohmann::json estimate_report(const TvpEstimate& est) {
    return nlohmann::json{{"eta", est.eta},
                          {"r_meas", est.hyper.r_meas},
                          {"q_state", est.hyper.q_state},
                          {"log_lik", est.log_lik},
                          {"converged", est.converged},
                          {"diagnostic", est.diagnostic},
                          {"flagged_years", est.flagged}};
}

} // namespace fxlab::io
