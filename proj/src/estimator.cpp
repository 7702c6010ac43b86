#include "fxlab/estimator.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fxlab {

void MacroDataset::validate() const {
    const std::size_t n = size();
    if (y.size() != n || m.size() != n || z.size() != n || rer.size() != n)
        throw std::invalid_argument("macro dataset: column lengths differ");
    if (n == 0) throw std::invalid_argument("macro dataset: empty");
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0 && year[t] != year[t - 1] + 1)
            throw std::invalid_argument("macro dataset: years must be consecutive");
        if (!std::isfinite(y[t]) || !std::isfinite(m[t]) || !std::isfinite(z[t]) ||
            !std::isfinite(rer[t]))
            throw std::invalid_argument("macro dataset: non-finite value");
    }
}

MacroDataset MacroDataset::from_csv(std::istream& in) {
    MacroDataset d;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("macro csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "year,y,m,z,rer")
        throw std::invalid_argument("macro csv: expected header 'year,y,m,z,rer'");
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        std::array<double, 5> vals{};
        for (int k = 0; k < 5; ++k) {
            if (!std::getline(row, tok, ',')) throw std::invalid_argument("macro csv: short row");
            try {
                vals[static_cast<std::size_t>(k)] = std::stod(tok);
            } catch (const std::exception&) {
                throw std::invalid_argument("macro csv: bad number '" + tok + "'");
            }
        }
        d.year.push_back(static_cast<int>(vals[0]));
        d.y.push_back(vals[1]);
        d.m.push_back(vals[2]);
        d.z.push_back(vals[3]);
        d.rer.push_back(vals[4]);
    }
    d.validate();
    return d;
}

HpResult hp_filter(std::span<const double> series, double lambda) {
    const std::size_t n = series.size();
    if (lambda < 0.0 || !std::isfinite(lambda))
        throw std::invalid_argument("hp_filter: lambda must be finite and >= 0");
    HpResult out;
    out.trend.assign(series.begin(), series.end());
    out.cycle.assign(n, 0.0);
    if (lambda == 0.0 || n == 0) return out;
    if (n < 4) throw std::invalid_argument("hp_filter: need at least 4 points for lambda > 0");

    // Normal equations (I + lambda D'D) tau = y with D the (n-2) x n second
    // difference operator: symmetric pentadiagonal, solved by banded
    // Cholesky. Bands stored by diagonal: d0 main, d1 first, d2 second.
    std::vector<double> d0(n, 1.0), d1(n - 1, 0.0), d2(n - 2, 0.0);
    static constexpr double stencil[3] = {1.0, -2.0, 1.0};
    for (std::size_t k = 0; k + 2 < n; ++k) {
        for (int a = 0; a < 3; ++a) {
            for (int b = a; b < 3; ++b) {
                const double w = lambda * stencil[a] * stencil[b];
                const std::size_t i = k + static_cast<std::size_t>(a);
                if (b == a) d0[i] += w;
                else if (b == a + 1) d1[i] += w;
                else d2[i] += w;
            }
        }
    }
    // Cholesky: L has unit bandwidth 2; l0 = diag, l1/l2 sub-diagonals.
    std::vector<double> l0(n), l1(n - 1, 0.0), l2(n - 2, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = d0[i];
        if (i >= 1) sum -= l1[i - 1] * l1[i - 1];
        if (i >= 2) sum -= l2[i - 2] * l2[i - 2];
        l0[i] = std::sqrt(sum);
        if (i + 1 < n) {
            double s1 = d1[i];
            if (i >= 1) s1 -= l1[i - 1] * l2[i - 1];
            l1[i] = s1 / l0[i];
        }
        if (i + 2 < n) l2[i] = d2[i] / l0[i];
    }
    // Forward then back substitution.
    std::vector<double>& tau = out.trend;
    for (std::size_t i = 0; i < n; ++i) {
        double s = series[i];
        if (i >= 1) s -= l1[i - 1] * tau[i - 1];
        if (i >= 2) s -= l2[i - 2] * tau[i - 2];
        tau[i] = s / l0[i];
    }
    for (std::size_t ri = n; ri-- > 0;) {
        double s = tau[ri];
        if (ri + 1 < n) s -= l1[ri] * tau[ri + 1];
        if (ri + 2 < n) s -= l2[ri] * tau[ri + 2];
        tau[ri] = s / l0[ri];
    }
    for (std::size_t i = 0; i < n; ++i) out.cycle[i] = series[i] - tau[i];
    return out;
}

namespace {

// 2x2 symmetric matrices as {a00, a01, a10, a11}.
using M2 = std::array<double, 4>;
using V2 = std::array<double, 2>;

M2 add(const M2& a, const M2& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

M2 mul(const M2& a, const M2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

M2 transpose(const M2& a) { return {a[0], a[2], a[1], a[3]}; }

M2 inverse(const M2& a) {
    const double det = a[0] * a[3] - a[1] * a[2];
    if (det == 0.0 || !std::isfinite(det))
        throw std::domain_error("tvp estimator: singular covariance");
    return {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
}

struct FilterPass {
    double log_lik = 0.0;    // concentrated or absolute, see run_filter
    double sigma2_hat = 0.0; // concentrated measurement variance
    std::vector<V2> x_pred, x_filt;
    std::vector<M2> p_pred, p_filt;
};

constexpr std::size_t kDiffuseSkip = 2;
constexpr double kDiffuseVar = 1e8;

// Linear Gaussian filter for state (pi_t, eta) with identity transition,
// Q = diag(q, 0) and H_t = [yT_t, rer_t]. With `concentrated` the
// measurement variance is set to 1, innovations accumulate the profiled
// variance estimate, and log_lik is the concentrated likelihood.
FilterPass run_filter(const std::vector<double>& mT, const std::vector<double>& yT,
                      const std::vector<double>& rer, double r, double q, bool concentrated) {
    const std::size_t n = mT.size();
    FilterPass fp;
    fp.x_pred.resize(n);
    fp.x_filt.resize(n);
    fp.p_pred.resize(n);
    fp.p_filt.resize(n);
    const double r_eff = concentrated ? 1.0 : r;
    V2 x{0.0, 0.0};
    M2 p{kDiffuseVar * r_eff, 0.0, 0.0, kDiffuseVar * r_eff};
    double ssq = 0.0, log_s = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        M2 pp = p;
        pp[0] += q;
        const V2 h{yT[t], rer[t]};
        const V2 ph{pp[0] * h[0] + pp[1] * h[1], pp[2] * h[0] + pp[3] * h[1]};
        const double s = h[0] * ph[0] + h[1] * ph[1] + r_eff;
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::domain_error("tvp estimator: non-positive innovation variance");
        const double v = mT[t] - (h[0] * x[0] + h[1] * x[1]);
        if (t >= kDiffuseSkip) {
            ssq += v * v / s;
            log_s += std::log(s);
        }
        fp.x_pred[t] = x;
        fp.p_pred[t] = pp;
        const V2 k{ph[0] / s, ph[1] / s};
        x = {x[0] + k[0] * v, x[1] + k[1] * v};
        // Joseph form keeps the covariance positive under the diffuse start.
        const M2 ikh{1.0 - k[0] * h[0], -k[0] * h[1], -k[1] * h[0], 1.0 - k[1] * h[1]};
        M2 pj = mul(mul(ikh, pp), transpose(ikh));
        pj[0] += k[0] * k[0] * r_eff;
        pj[1] += k[0] * k[1] * r_eff;
        pj[2] += k[1] * k[0] * r_eff;
        pj[3] += k[1] * k[1] * r_eff;
        fp.x_filt[t] = x;
        fp.p_filt[t] = pj;
        p = pj;
    }
    const double neff = static_cast<double>(n - kDiffuseSkip);
    constexpr double log2pi = 1.8378770664093454836;
    if (concentrated) {
        fp.sigma2_hat = std::max(ssq / neff, 1e-300);
        fp.log_lik = -0.5 * (neff * log2pi + neff * std::log(fp.sigma2_hat) + neff + log_s);
    } else {
        fp.sigma2_hat = r;
        fp.log_lik = -0.5 * (neff * log2pi + log_s + ssq);
    }
    return fp;
}

// Rauch-Tung-Striebel backward pass; `scale` multiplies the smoothed
// covariances (the concentrated filter runs with unit measurement noise).
void smooth(const FilterPass& fp, double scale, std::vector<V2>& xs, std::vector<M2>& ps) {
    const std::size_t n = fp.x_filt.size();
    xs = fp.x_filt;
    ps = fp.p_filt;
    for (std::size_t ri = n - 1; ri-- > 0;) {
        const M2 j = mul(fp.p_filt[ri], inverse(fp.p_pred[ri + 1]));
        const V2 dx{xs[ri + 1][0] - fp.x_pred[ri + 1][0], xs[ri + 1][1] - fp.x_pred[ri + 1][1]};
        xs[ri][0] += j[0] * dx[0] + j[1] * dx[1];
        xs[ri][1] += j[2] * dx[0] + j[3] * dx[1];
        M2 dp = ps[ri + 1];
        for (int i = 0; i < 4; ++i) dp[static_cast<std::size_t>(i)] -= fp.p_pred[ri + 1][static_cast<std::size_t>(i)];
        ps[ri] = add(ps[ri], mul(mul(j, dp), transpose(j)));
    }
    for (auto& p : ps)
        for (auto& v : p) v *= scale;
}

double variance_of(const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(x.size());
}

} // namespace

TvpEstimate kalman_tvp(const MacroDataset& data, std::optional<TvpHyper> hyper) {
    data.validate();
    const std::size_t n = data.size();
    if (n < 8) throw std::invalid_argument("tvp estimator: need at least 8 years");
    const std::vector<double> mT = hp_filter(data.m, 1600.0).trend;
    const std::vector<double> yT = hp_filter(data.y, 1600.0).trend;
    if (variance_of(yT) < 1e-12 || variance_of(data.rer) < 1e-14)
        throw std::domain_error("tvp estimator: near-zero regressor variance");

    TvpEstimate est;
    FilterPass fp;
    double scale = 1.0;
    if (hyper) {
        if (hyper->r_meas <= 0.0 || hyper->q_state < 0.0)
            throw std::invalid_argument("tvp estimator: hyper needs r_meas > 0 and q_state >= 0");
        fp = run_filter(mT, yT, data.rer, hyper->r_meas, hyper->q_state, false);
        est.hyper = *hyper;
        est.log_lik = fp.log_lik;
    } else {
        // Maximum likelihood over the signal-to-noise ratio q/r, with the
        // measurement variance concentrated out: coarse log10 grid then
        // golden-section refinement.
        const auto eval = [&](double log_ratio) {
            return run_filter(mT, yT, data.rer, 1.0, std::pow(10.0, log_ratio), true);
        };
        double best_g = -14.0;
        double best_ll = -std::numeric_limits<double>::infinity();
        for (double g = -14.0; g <= 6.0 + 1e-9; g += 0.5) {
            const double ll = eval(g).log_lik;
            if (ll > best_ll) {
                best_ll = ll;
                best_g = g;
            }
            est.search_ll.push_back(best_ll);
        }
        double a = best_g - 0.5, b = best_g + 0.5;
        constexpr double gr = 0.61803398874989484820;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = eval(c).log_lik, fd = eval(d).log_lik;
        for (int it = 0; it < 80; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = eval(c).log_lik;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = eval(d).log_lik;
            }
            best_ll = std::max({best_ll, fc, fd});
            est.search_ll.push_back(best_ll);
        }
        const double g_hat = 0.5 * (a + b);
        fp = run_filter(mT, yT, data.rer, 1.0, std::pow(10.0, g_hat), true);
        scale = fp.sigma2_hat;
        est.hyper.r_meas = fp.sigma2_hat;
        est.hyper.q_state = std::pow(10.0, g_hat) * fp.sigma2_hat;
        est.log_lik = fp.log_lik;
        if (best_g <= -14.0 + 1e-9 || best_g >= 6.0 - 1e-9) {
            est.converged = false;
            est.diagnostic = "signal-to-noise search hit the grid edge; reporting best found";
        }
    }

    std::vector<V2> xs;
    std::vector<M2> ps;
    smooth(fp, scale, xs, ps);
    est.pi.resize(n);
    est.pi_se.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        est.pi[t] = xs[t][0];
        est.pi_se[t] = std::sqrt(std::max(ps[t][0], 0.0));
    }
    est.eta = xs[n - 1][1];
    const TradeMultiplier tm = trade_multiplier(data.z, est.pi);
    est.dy_bp = tm.dy_bp;
    est.flagged = tm.flagged;
    return est;
}

TradeMultiplier trade_multiplier(std::span<const double> z, std::span<const double> pi,
                                 double lambda) {
    if (z.size() != pi.size()) throw std::invalid_argument("trade_multiplier: length mismatch");
    TradeMultiplier out;
    const std::size_t n = z.size();
    out.dy_bp.assign(n, std::numeric_limits<double>::quiet_NaN());
    const std::vector<double> trend = hp_filter(z, lambda).trend;
    for (std::size_t t = 1; t < n; ++t) {
        if (pi[t] <= 0.0) {
            out.flagged.push_back(t);
            continue;
        }
        out.dy_bp[t] = (trend[t] - trend[t - 1]) / pi[t];
    }
    return out;
}

} // namespace fxlab
