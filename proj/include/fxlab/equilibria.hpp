#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fxlab/map.hpp"
#include "fxlab/params.hpp"

namespace fxlab {

enum class EqLabel { P1, P2, P3 };

enum class Classification {
    stable,
    unstable,      // all eigenvalues outside the unit circle
    saddle,        // eigenvalues on both sides
    boundary_flip, // an eigenvalue at -1 within tolerance
    boundary_ns,   // complex eigenvalues on the unit circle within tolerance
    boundary_fold, // an eigenvalue at +1 within tolerance
};

const char* to_string(EqLabel label);
const char* to_string(Classification c);

/// 2x2 map Jacobian, or its 3x3 embedding (auxiliary state = lagged e)
/// when extrapolators are present. Row-major, n in {2, 3}.
struct Jacobian {
    int n = 2;
    std::array<double, 9> m{};

    double at(int i, int j) const { return m[static_cast<std::size_t>(i * n + j)]; }
    double& at(int i, int j) { return m[static_cast<std::size_t>(i * n + j)]; }
};

using NamedConditions = std::vector<std::pair<std::string, double>>;

struct Equilibrium {
    EqLabel label = EqLabel::P1;
    double e_bar = 0.0;
    double dy_bar = 0.0;
    Jacobian jacobian;
    std::vector<std::complex<double>> eigenvalues;
    // 2D: i = 1+trJ+detJ, ii = 1-trJ+detJ, iii = 1-detJ, plus the closed
    // forms A (flip) and B (Neimark-Sacker) evaluated at the off-PPP pair.
    // 3D: c1 = 1+a+b+c, c2 = 1-a+b-c, c3 = 1-b+ac-c^2, c4 = 3-b from the
    // characteristic cubic x^3 + a x^2 + b x + c.
    NamedConditions conditions;
    Classification classification = Classification::stable;
};

struct EquilibriaResult {
    std::vector<Equilibrium> points; // P1 first, then P2 (+sqrt), P3 (-sqrt)
    std::string note;                // diagnostic, e.g. pure chartism edge case
};

/// Closed-form fixed points with Jacobians, eigenvalues, stability
/// conditions and classification. P2/P3 exist iff both w_chart and w_fund
/// are positive; with w_fund = 0 < w_chart their location is undefined and
/// only P1 is returned, with a note.
EquilibriaResult equilibria(const ModelParams& p);

/// Analytic Jacobian of the map at an arbitrary point (not necessarily a
/// fixed point). 3x3 embedding iff w_extra > 0.
Jacobian jacobian_at(const ModelParams& p, double e, double dy);

/// Fills conditions, eigenvalues and classification for an equilibrium
/// produced by equilibria(). Conditions within `boundary_tol` of zero give
/// the matching boundary_* classification.
Equilibrium stability(const ModelParams& p, Equilibrium eq, double boundary_tol = 1e-10);

/// Flip condition A at the off-PPP equilibria: positive on the stable side,
/// zero at the period-doubling boundary.
double flip_condition(const ModelParams& p);

/// Neimark-Sacker condition B at the off-PPP equilibria.
double ns_condition(const ModelParams& p);

/// Evaluator mapping a value of the free parameter to the stability
/// conditions at the off-PPP equilibria (2D set for w_extra = 0, cubic set
/// otherwise). Weight axes keep shares summing to one, see with_axis().
std::function<NamedConditions(double)> condition_surface(const ModelParams& p,
                                                         const std::string& free);

/// Roots of x^3 + a x^2 + b x + c (Cardano with a Newton polish).
std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c);

} // namespace fxlab
