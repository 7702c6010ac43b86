#include "fxlab/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace fxlab {

const char* to_string(EqLabel label) {
    switch (label) {
        case EqLabel::P1: return "P1";
        case EqLabel::P2: return "P2";
        case EqLabel::P3: return "P3";
    }
    return "?";
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::stable: return "stable";
        case Classification::unstable: return "unstable";
        case Classification::saddle: return "saddle";
        case Classification::boundary_flip: return "boundary_flip";
        case Classification::boundary_ns: return "boundary_ns";
        case Classification::boundary_fold: return "boundary_fold";
    }
    return "?";
}

Jacobian jacobian_at(const ModelParams& p, double e, double dy) {
    const double m = p.mu + p.rho;
    const double f = p.w_flex * p.beta;
    const double g = p.gamma();
    const double gap = -e - p.omega * dy;
    const double q2 = gap * gap;
    const double de = -3.0 * p.w_fund * q2 + p.w_chart;        // d(trade)/de without the lag term
    const double dy_part = p.omega * de;                       // d(trade)/d(dy)
    Jacobian j;
    if (p.w_extra > 0.0) {
        const double de3 = de + p.w_extra;
        j.n = 3;
        j.at(0, 0) = 1.0 + m * de3;
        j.at(0, 1) = m * dy_part;
        j.at(0, 2) = -m * p.w_extra;
        j.at(1, 0) = -f * g * de3;
        j.at(1, 1) = 1.0 + f * (-g * dy_part - 1.0);
        j.at(1, 2) = -f * p.w_extra;
        j.at(2, 0) = 1.0;
        j.at(2, 1) = 0.0;
        j.at(2, 2) = 0.0;
    } else {
        j.n = 2;
        j.at(0, 0) = 1.0 + m * de;
        j.at(0, 1) = m * dy_part;
        j.at(1, 0) = -f * g * de;
        j.at(1, 1) = 1.0 + f * (-g * dy_part - 1.0);
    }
    return j;
}

double flip_condition(const ModelParams& p) {
    const double m = p.mu + p.rho;
    const double f = p.w_flex * p.beta;
    return 4.0 - 4.0 * m * p.w_chart + 2.0 * ((m + 2.0 * p.gamma() * p.omega) * p.w_chart - 1.0) * f;
}

double ns_condition(const ModelParams& p) {
    const double m = p.mu + p.rho;
    const double f = p.w_flex * p.beta;
    return (1.0 - 2.0 * p.gamma() * p.omega * p.w_chart) * f + 2.0 * m * p.w_chart * (1.0 - f);
}

std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c) {
    using C = std::complex<double>;
    // Depressed form t^3 + p t + q, x = t - a/3.
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    std::array<C, 3> r;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (p == 0.0 && q == 0.0) {
        r.fill(C(shift, 0.0));
        return r;
    }
    if (disc >= 0.0) {
        // Three real roots.
        const double s = std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (2.0 * p * s);
        arg = std::clamp(arg, -1.0, 1.0);
        const double phi = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            r[k] = C(2.0 * s * std::cos(phi / 3.0 - 2.0943951023931953 * k) + shift, 0.0);
    } else {
        // One real root, complex pair (Cardano).
        const double half_q = q / 2.0;
        const double rad = std::sqrt(half_q * half_q + p * p * p / 27.0);
        const double u = std::cbrt(-half_q + (half_q <= 0.0 ? rad : -rad));
        // Avoid cancellation: pick the larger-magnitude cube root, recover
        // the partner from p = -3uv.
        const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
        const double t1 = u + v;
        const double re = -t1 / 2.0;
        const double im = (u - v) * 0.86602540378443864676; // sqrt(3)/2
        r[0] = C(t1 + shift, 0.0);
        r[1] = C(re + shift, im);
        r[2] = C(re + shift, -im);
    }
    // One Newton step per root against the undepressed cubic.
    for (auto& x : r) {
        const C fx = ((x + a) * x + b) * x + c;
        const C dfx = (3.0 * x + 2.0 * a) * x + b;
        if (std::abs(dfx) > 0.0) x -= fx / dfx;
    }
    return r;
}

namespace {

std::vector<std::complex<double>> eigenvalues_of(const Jacobian& j) {
    if (j.n == 2) {
        const double tr = j.at(0, 0) + j.at(1, 1);
        const double det = j.at(0, 0) * j.at(1, 1) - j.at(0, 1) * j.at(1, 0);
        const double disc = tr * tr - 4.0 * det;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            return {{(tr + s) / 2.0, 0.0}, {(tr - s) / 2.0, 0.0}};
        }
        const double im = std::sqrt(-disc) / 2.0;
        return {{tr / 2.0, im}, {tr / 2.0, -im}};
    }
    // Characteristic cubic x^3 + a x^2 + b x + c from trace, principal
    // minors and determinant (third row of the embedding is [1 0 0]).
    const double a = -(j.at(0, 0) + j.at(1, 1));
    const double b = -j.at(0, 2) + j.at(0, 0) * j.at(1, 1) - j.at(0, 1) * j.at(1, 0);
    const double c = -j.at(0, 1) * j.at(1, 2) + j.at(0, 2) * j.at(1, 1);
    const auto roots = cubic_roots(a, b, c);
    return {roots.begin(), roots.end()};
}

Classification classify(const NamedConditions& conds, bool three_d,
                        const std::vector<std::complex<double>>& eig, double tol) {
    // Boundary bands first: the unit-root conditions in their bifurcation
    // order. For the 2D set: i <-> flip (root at -1), ii <-> fold (+1),
    // iii <-> Neimark-Sacker. For the cubic set: c1 fold, c2 flip, c3 NS.
    struct Band { const char* name; Classification cls; };
    static constexpr Band bands2[] = {{"i", Classification::boundary_flip},
                                      {"ii", Classification::boundary_fold},
                                      {"iii", Classification::boundary_ns}};
    static constexpr Band bands3[] = {{"c1", Classification::boundary_fold},
                                      {"c2", Classification::boundary_flip},
                                      {"c3", Classification::boundary_ns}};
    const auto find = [&](const char* name) {
        for (const auto& [n, v] : conds)
            if (n == name) return v;
        return 0.0;
    };
    if (three_d) {
        for (const auto& band : bands3)
            if (std::fabs(find(band.name)) <= tol) return band.cls;
    } else {
        for (const auto& band : bands2)
            if (std::fabs(find(band.name)) <= tol) return band.cls;
    }
    const bool all_pos = three_d
        ? find("c1") > 0.0 && find("c2") > 0.0 && find("c3") > 0.0 && find("c4") > 0.0
        : find("i") > 0.0 && find("ii") > 0.0 && find("iii") > 0.0;
    if (all_pos) return Classification::stable;
    std::size_t outside = 0;
    for (const auto& ev : eig)
        if (std::abs(ev) > 1.0) ++outside;
    return outside == eig.size() ? Classification::unstable : Classification::saddle;
}

} // namespace

Equilibrium stability(const ModelParams& p, Equilibrium eq, double boundary_tol) {
    eq.jacobian = jacobian_at(p, eq.e_bar, eq.dy_bar);
    eq.eigenvalues = eigenvalues_of(eq.jacobian);
    eq.conditions.clear();
    const Jacobian& j = eq.jacobian;
    if (j.n == 2) {
        const double tr = j.at(0, 0) + j.at(1, 1);
        const double det = j.at(0, 0) * j.at(1, 1) - j.at(0, 1) * j.at(1, 0);
        eq.conditions = {{"i", 1.0 + tr + det},
                         {"ii", 1.0 - tr + det},
                         {"iii", 1.0 - det},
                         {"A", flip_condition(p)},
                         {"B", ns_condition(p)}};
    } else {
        const double a = -(j.at(0, 0) + j.at(1, 1));
        const double b = -j.at(0, 2) + j.at(0, 0) * j.at(1, 1) - j.at(0, 1) * j.at(1, 0);
        const double c = -j.at(0, 1) * j.at(1, 2) + j.at(0, 2) * j.at(1, 1);
        eq.conditions = {{"c1", 1.0 + a + b + c},
                         {"c2", 1.0 - a + b - c},
                         {"c3", 1.0 - b + a * c - c * c},
                         {"c4", 3.0 - b}};
    }
    eq.classification = classify(eq.conditions, j.n == 3, eq.eigenvalues, boundary_tol);
    return eq;
}

EquilibriaResult equilibria(const ModelParams& p) {
    p.validate();
    EquilibriaResult res;
    const double e1 = -p.omega * p.dy_bp;
    Equilibrium p1;
    p1.label = EqLabel::P1;
    p1.e_bar = e1;
    p1.dy_bar = p.dy_bp;
    res.points.push_back(stability(p, p1));
    if (p.w_chart > 0.0 && p.w_fund > 0.0) {
        const double s = std::sqrt(p.w_chart / p.w_fund);
        for (int sign : {+1, -1}) {
            Equilibrium eq;
            eq.label = sign > 0 ? EqLabel::P2 : EqLabel::P3;
            eq.e_bar = e1 + sign * s;
            eq.dy_bar = p.dy_bp;
            res.points.push_back(stability(p, eq));
        }
    } else if (p.w_chart > 0.0) {
        res.note = "pure chartism (w_fund = 0): the off-PPP equilibria are undefined; "
                   "only P1 is reported";
    }
    return res;
}

std::function<NamedConditions(double)> condition_surface(const ModelParams& p,
                                                         const std::string& free) {
    with_axis(p, free, 0.5); // fail fast on unknown axis names
    return [p, free](double value) {
        ModelParams q = with_axis(p, free, value);
        q.validate();
        // Conditions at the off-PPP pair; both share the squared gap
        // w_chart / w_fund, so either one represents the pair. When the
        // pair degenerates (w_chart = 0) the gap is zero and the surface
        // continues through the P1-coincident limit.
        const double s = q.w_fund > 0.0 ? std::sqrt(q.w_chart / q.w_fund) : 0.0;
        Equilibrium eq;
        eq.label = EqLabel::P2;
        eq.e_bar = -q.omega * q.dy_bp + s;
        eq.dy_bar = q.dy_bp;
        return stability(q, eq).conditions;
    };
}

} // namespace fxlab
