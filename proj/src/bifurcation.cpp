#include "fxlab/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fxlab/simulate.hpp"

namespace fxlab {

const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::stable: return "stable";
        case RegionLabel::flip_crossed: return "flip_crossed";
        case RegionLabel::ns_crossed: return "ns_crossed";
        case RegionLabel::fold_crossed: return "fold_crossed";
        case RegionLabel::multiple: return "multiple";
        case RegionLabel::no_p23: return "no_p23";
    }
    return "?";
}

namespace {

SweepBranch run_branch(const ModelParams& p, double e0, double dy0, const SweepProtocol& proto) {
    SweepBranch branch;
    // Deterministic skeleton: the diagrams sample the unforced map.
    ModelParams q = p;
    q.sigma = 0.0;
    const MarketState init{e0, dy0, e0};
    const Trajectory traj =
        simulate(q, init, proto.transient + proto.samples, std::nullopt, proto.e_max);
    if (traj.diverged_at) {
        branch.diverged = true;
        return branch;
    }
    branch.e_samples.assign(traj.e.begin() + static_cast<std::ptrdiff_t>(proto.transient),
                            traj.e.end());
    return branch;
}

} // namespace

std::size_t count_orbit_points(const SweepBranch& branch, double cluster_tol) {
    if (branch.diverged || branch.e_samples.empty()) return 0;
    std::vector<double> s = branch.e_samples;
    std::sort(s.begin(), s.end());
    std::size_t k = 1;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] - s[i - 1] > cluster_tol) ++k;
    return k;
}

SweepResult sweep(const ModelParams& p, const std::string& axis, double lo, double hi,
                  std::size_t n_points, const SweepProtocol& proto, unsigned workers) {
    if (n_points < 2) throw std::invalid_argument("sweep needs at least 2 grid points");
    if (!(lo < hi)) throw std::invalid_argument("sweep needs lo < hi");
    with_axis(p, axis, lo); // validate the axis name up front

    SweepResult res;
    res.axis = axis;
    res.protocol = proto;
    res.points.resize(n_points);

    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    const unsigned nw = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_points)));
    auto work = [&](unsigned w) {
        for (std::size_t k = w; k < n_points; k += nw) {
            const double value = lo + static_cast<double>(k) * step;
            ModelParams q = with_axis(p, axis, value);
            q.validate();
            const double e1 = -q.omega * q.dy_bp;
            const double spread =
                (q.w_chart > 0.0 && q.w_fund > 0.0) ? std::sqrt(q.w_chart / q.w_fund) : 0.0;
            SweepPoint& pt = res.points[k];
            pt.value = value;
            pt.near_p2 = run_branch(q, e1 + spread + proto.offset_e,
                                    q.dy_bp + proto.offset_dy, proto);
            pt.near_p3 = run_branch(q, e1 - spread + proto.offset_e,
                                    q.dy_bp + proto.offset_dy, proto);
        }
    };
    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return res;
}

namespace {

RegionLabel label_cell(const NamedConditions& conds, bool exists) {
    if (!exists) return RegionLabel::no_p23;
    const auto get = [&](const char* name, double fallback) {
        for (const auto& [n, v] : conds)
            if (n == name) return v;
        return fallback;
    };
    // 2D set carries A (flip) and B (NS); the cubic set adds a fold
    // condition c1 and the bound c4.
    const bool cubic = !conds.empty() && conds.front().first == "c1";
    const double fold = cubic ? get("c1", 1.0) : 1.0;
    const double flip = cubic ? get("c2", 1.0) : get("A", 1.0);
    const double ns = cubic ? get("c3", 1.0) : get("B", 1.0);
    const double bound = cubic ? get("c4", 1.0) : 1.0;
    int violations = (fold <= 0.0) + (flip <= 0.0) + (ns <= 0.0) + (bound <= 0.0);
    if (violations == 0) return RegionLabel::stable;
    if (violations > 1 || bound <= 0.0) return RegionLabel::multiple;
    if (fold <= 0.0) return RegionLabel::fold_crossed;
    if (flip <= 0.0) return RegionLabel::flip_crossed;
    return RegionLabel::ns_crossed;
}

} // namespace

RegionGrid boundary_scan(const ModelParams& p, const std::string& axis1, double lo1,
                         double hi1, std::size_t n1, const std::string& axis2, double lo2,
                         double hi2, std::size_t n2) {
    if (axis1 == axis2) throw std::invalid_argument("boundary scan axes must differ");
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("boundary scan needs n1, n2 >= 2");
    RegionGrid grid;
    grid.axis1 = axis1;
    grid.axis2 = axis2;
    grid.grid1.resize(n1);
    grid.grid2.resize(n2);
    grid.cells.resize(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
        grid.grid1[i] = lo1 + (hi1 - lo1) * static_cast<double>(i) / static_cast<double>(n1 - 1);
    for (std::size_t j = 0; j < n2; ++j)
        grid.grid2[j] = lo2 + (hi2 - lo2) * static_cast<double>(j) / static_cast<double>(n2 - 1);
    for (std::size_t j = 0; j < n2; ++j) {
        const ModelParams row = with_axis(p, axis2, grid.grid2[j]);
        const auto surface = condition_surface(row, axis1);
        for (std::size_t i = 0; i < n1; ++i) {
            RegionCell& cell = grid.cells[j * n1 + i];
            const ModelParams q = with_axis(row, axis1, grid.grid1[i]);
            q.validate();
            cell.conditions = surface(grid.grid1[i]);
            cell.label = label_cell(cell.conditions, q.w_chart > 0.0 && q.w_fund > 0.0);
        }
    }
    return grid;
}

} // namespace fxlab
