#include "fxlab/basins.hpp"

#include <cmath>
#include <thread>

#include "fxlab/equilibria.hpp"

namespace fxlab {

const char* to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::divergent: return "divergent";
        case OrbitClass::P1: return "P1";
        case OrbitClass::P2: return "P2";
        case OrbitClass::P3: return "P3";
        case OrbitClass::other: return "other";
    }
    return "?";
}

namespace {

// The orbit loop runs in deviations (u, v) = (e - e1_bar, dy - dy_bp).
// In these coordinates the deterministic map is exactly odd — every
// floating-point operation commutes with negation — so grids built from
// symmetric offsets classify mirror cells consistently.
struct BasinContext {
    ModelParams p;
    bool has_p23 = false;
    double spread = 0.0; // sqrt(w_chart / w_fund); u-coordinate of P2
};

OrbitClass classify_deviation(const BasinContext& ctx, double u, double v,
                              const OrbitCaps& caps) {
    const ModelParams& p = ctx.p;
    const double m = p.mu + p.rho;
    const double f = p.w_flex * p.beta;
    const double g = p.gamma();
    double up = u; // lagged deviation; e_prev starts at e
    std::size_t dwell_p1 = 0, dwell_p2 = 0, dwell_p3 = 0;
    for (std::size_t t = 0; t < caps.t_max; ++t) {
        const double x = u + p.omega * v; // e - E[f]
        const double trade = -p.w_fund * x * x * x + p.w_chart * x + p.w_extra * (u - up);
        const double un = u + m * trade;
        const double vn = v + f * (-g * trade - v);
        up = u;
        u = un;
        v = vn;
        if (!std::isfinite(u) || !std::isfinite(v) || std::fabs(u) > caps.e_max)
            return OrbitClass::divergent;
        if (ctx.has_p23) {
            dwell_p2 = (std::fabs(u - ctx.spread) < caps.eps_conv && std::fabs(v) < caps.eps_conv)
                           ? dwell_p2 + 1 : 0;
            dwell_p3 = (std::fabs(u + ctx.spread) < caps.eps_conv && std::fabs(v) < caps.eps_conv)
                           ? dwell_p3 + 1 : 0;
            if (dwell_p2 >= caps.dwell) return OrbitClass::P2;
            if (dwell_p3 >= caps.dwell) return OrbitClass::P3;
        }
        dwell_p1 = (std::fabs(u) < caps.eps_conv && std::fabs(v) < caps.eps_conv)
                       ? dwell_p1 + 1 : 0;
        if (dwell_p1 >= caps.dwell) return OrbitClass::P1;
    }
    return OrbitClass::other;
}

BasinContext make_context(const ModelParams& p) {
    BasinContext ctx{p, false, 0.0};
    const auto eqs = equilibria(p);
    for (const auto& eq : eqs.points) {
        if (eq.label == EqLabel::P2) {
            ctx.has_p23 = true;
            ctx.spread = std::sqrt(p.w_chart / p.w_fund);
        }
    }
    return ctx;
}

} // namespace

OrbitClass classify_orbit(const ModelParams& p, const MarketState& init, const OrbitCaps& caps) {
    const BasinContext ctx = make_context(p);
    const double e1 = -p.omega * p.dy_bp;
    return classify_deviation(ctx, init.e - e1, init.dy - p.dy_bp, caps);
}

BasinGrid basin_grid(const ModelParams& p, const BasinWindow& window, std::size_t nx,
                     std::size_t ny, const OrbitCaps& caps, unsigned workers) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("basin grid needs nx, ny >= 2");
    const BasinContext ctx = make_context(p);
    const double e1 = -p.omega * p.dy_bp;

    BasinGrid grid;
    grid.params = p;
    grid.window = window;
    grid.nx = nx;
    grid.ny = ny;
    grid.caps = caps;
    grid.cells.assign(nx * ny, OrbitClass::other);
    grid.e_centers.resize(nx);
    grid.dy_centers.resize(ny);

    // Cell centers as window-center + symmetric offset: offsets for i and
    // nx-1-i are exact negations of each other.
    const double he = 2.0 * window.e_halfwidth / static_cast<double>(nx);
    const double hd = 2.0 * window.dy_halfwidth / static_cast<double>(ny);
    std::vector<double> ue(nx), vd(ny);
    for (std::size_t i = 0; i < nx; ++i) {
        ue[i] = (static_cast<double>(i) + 0.5 - static_cast<double>(nx) / 2.0) * he;
        grid.e_centers[i] = window.e_center + ue[i];
    }
    for (std::size_t j = 0; j < ny; ++j) {
        vd[j] = (static_cast<double>(j) + 0.5 - static_cast<double>(ny) / 2.0) * hd;
        grid.dy_centers[j] = window.dy_center + vd[j];
    }
    const double base_u = window.e_center - e1;
    const double base_v = window.dy_center - p.dy_bp;

    const unsigned nw = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(ny)));
    auto work = [&](unsigned w) {
        for (std::size_t j = w; j < ny; j += nw)
            for (std::size_t i = 0; i < nx; ++i)
                grid.cells[j * nx + i] =
                    classify_deviation(ctx, base_u + ue[i], base_v + vd[j], caps);
    };
    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return grid;
}

} // namespace fxlab
