#include "fxlab/params.hpp"

#include <cmath>

namespace fxlab {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("model params: ") + what);
}

} // namespace

void ModelParams::validate() const {
    require(std::isfinite(mu) && mu >= 0.0, "mu must be finite and >= 0");
    require(std::isfinite(rho) && rho >= 0.0, "rho must be finite and >= 0");
    require(std::isfinite(w_fund) && w_fund >= 0.0 && w_fund <= 1.0, "w_fund must lie in [0,1]");
    require(std::isfinite(w_chart) && w_chart >= 0.0 && w_chart <= 1.0, "w_chart must lie in [0,1]");
    require(std::isfinite(w_extra) && w_extra >= 0.0 && w_extra <= 1.0, "w_extra must lie in [0,1]");
    require(std::fabs(w_fund + w_chart + w_extra - 1.0) <= 1e-12,
            "speculator shares w_fund + w_chart + w_extra must sum to 1");
    require(std::isfinite(w_flex) && w_flex > 0.0 && w_flex < 1.0, "w_flex must lie in (0,1)");
    require(std::isfinite(beta) && beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
    require(std::isfinite(omega) && omega > 0.0 && omega < 1.0, "omega must lie in (0,1)");
    require(std::isfinite(theta) && theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
    require(std::isfinite(pi_elasticity) && pi_elasticity > 0.0, "pi_elasticity must be > 0");
    require(std::isfinite(dy_bp), "dy_bp must be finite");
    require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be finite and >= 0");
    // gamma > 0 whenever speculators react at all; the mu = rho = 0 edge
    // (gamma = 0, no speculative channel) is allowed.
    require(std::isfinite(gamma()) && gamma() >= 0.0, "gamma must be finite and >= 0");
    if (dz_ns) {
        require(std::isfinite(*dz_ns), "dz_ns must be finite");
        require(std::fabs(dy_bp * pi_elasticity - *dz_ns) <= 1e-12 * std::fmax(1.0, std::fabs(*dz_ns)),
                "dz_ns must equal dy_bp * pi_elasticity");
    }
}

ModelParams with_axis(const ModelParams& p, const std::string& axis, double value) {
    ModelParams out = p;
    out.dz_ns.reset(); // dy_bp stays authoritative when other fields move
    if (axis == "mu") out.mu = value;
    else if (axis == "rho") out.rho = value;
    else if (axis == "w_fund") { out.w_fund = value; out.w_chart = 1.0 - value - out.w_extra; }
    else if (axis == "w_chart") { out.w_chart = value; out.w_fund = 1.0 - value - out.w_extra; }
    else if (axis == "w_extra") { out.w_extra = value; out.w_chart = 1.0 - out.w_fund - value; }
    else if (axis == "w_flex") out.w_flex = value;
    else if (axis == "beta") out.beta = value;
    else if (axis == "omega") out.omega = value;
    else if (axis == "theta") out.theta = value;
    else if (axis == "pi_elasticity") out.pi_elasticity = value;
    else if (axis == "dy_bp") out.dy_bp = value;
    else if (axis == "sigma") out.sigma = value;
    else throw std::invalid_argument("unknown parameter axis: " + axis);
    return out;
}

} // namespace fxlab
