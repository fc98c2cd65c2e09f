#include "eit/steady_state.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "eit/errors.hpp"
#include "eit/model.hpp"

namespace eit {

namespace {

const cplx kI(0.0, 1.0);

using RVec12 = Eigen::Matrix<double, 12, 1>;
using RMat12 = Eigen::Matrix<double, 12, 12>;

// Reduced real parameterization: conjugate pairs collapsed, atomic
// entries in per-atom units. Order:
//   [Re s1m, Im s1m, Re s2m, Im s2m, Re s12, Im s12, w1, w2,
//    Re a1, Im a1, Re a2, Im a2]
RVec12 pack(const Vec12& x, double n) {
    RVec12 y;
    y(0) = x(idx::s1m).real() / n;
    y(1) = x(idx::s1m).imag() / n;
    y(2) = x(idx::s2m).real() / n;
    y(3) = x(idx::s2m).imag() / n;
    y(4) = x(idx::s12).real() / n;
    y(5) = x(idx::s12).imag() / n;
    y(6) = x(idx::w1).real() / n;
    y(7) = x(idx::w2).real() / n;
    y(8) = x(idx::a1).real();
    y(9) = x(idx::a1).imag();
    y(10) = x(idx::a2).real();
    y(11) = x(idx::a2).imag();
    return y;
}

Vec12 unpack(const RVec12& y, double n) {
    Vec12 x;
    x(idx::s1m) = n * cplx(y(0), y(1));
    x(idx::s1p) = std::conj(x(idx::s1m));
    x(idx::s2m) = n * cplx(y(2), y(3));
    x(idx::s2p) = std::conj(x(idx::s2m));
    x(idx::s12) = n * cplx(y(4), y(5));
    x(idx::s12p) = std::conj(x(idx::s12));
    x(idx::w1) = n * y(6);
    x(idx::w2) = n * y(7);
    x(idx::a1) = cplx(y(8), y(9));
    x(idx::a1d) = std::conj(x(idx::a1));
    x(idx::a2) = cplx(y(10), y(11));
    x(idx::a2d) = std::conj(x(idx::a2));
    return x;
}

// Scaled residual: atomic rows / N, field rows as-is.
RVec12 residual_vec(const PhysicalParams& p, const Vec12& x) {
    const Vec12 f = drift(p, x);
    const double inv_n = 1.0 / p.N;
    RVec12 r;
    r(0) = f(idx::s1m).real() * inv_n;
    r(1) = f(idx::s1m).imag() * inv_n;
    r(2) = f(idx::s2m).real() * inv_n;
    r(3) = f(idx::s2m).imag() * inv_n;
    r(4) = f(idx::s12).real() * inv_n;
    r(5) = f(idx::s12).imag() * inv_n;
    r(6) = f(idx::w1).real() * inv_n;
    r(7) = f(idx::w2).real() * inv_n;
    r(8) = f(idx::a1).real();
    r(9) = f(idx::a1).imag();
    r(10) = f(idx::a2).real();
    r(11) = f(idx::a2).imag();
    return r;
}

// Complex tangent of the lifted state for each reduced parameter.
Vec12 tangent(int j, double n) {
    Vec12 t = Vec12::Zero();
    auto pair_tangent = [&](int m, int pl, bool imag_part) {
        if (!imag_part) {
            t(m) = n;
            t(pl) = n;
        } else {
            t(m) = cplx(0.0, n);
            t(pl) = cplx(0.0, -n);
        }
    };
    switch (j) {
        case 0: pair_tangent(idx::s1m, idx::s1p, false); break;
        case 1: pair_tangent(idx::s1m, idx::s1p, true); break;
        case 2: pair_tangent(idx::s2m, idx::s2p, false); break;
        case 3: pair_tangent(idx::s2m, idx::s2p, true); break;
        case 4: pair_tangent(idx::s12, idx::s12p, false); break;
        case 5: pair_tangent(idx::s12, idx::s12p, true); break;
        case 6: t(idx::w1) = n; break;
        case 7: t(idx::w2) = n; break;
        case 8: t(idx::a1) = 1.0; t(idx::a1d) = 1.0; break;
        case 9: t(idx::a1) = cplx(0.0, 1.0); t(idx::a1d) = cplx(0.0, -1.0); break;
        case 10: t(idx::a2) = 1.0; t(idx::a2d) = 1.0; break;
        case 11: t(idx::a2) = cplx(0.0, 1.0); t(idx::a2d) = cplx(0.0, -1.0); break;
    }
    return t;
}

RMat12 real_jacobian(const PhysicalParams& p, const Vec12& x) {
    const Mat12 jc = drift_jacobian(p, x);
    const double inv_n = 1.0 / p.N;
    RMat12 jr;
    for (int j = 0; j < 12; ++j) {
        const Vec12 v = jc * tangent(j, p.N);
        jr(0, j) = v(idx::s1m).real() * inv_n;
        jr(1, j) = v(idx::s1m).imag() * inv_n;
        jr(2, j) = v(idx::s2m).real() * inv_n;
        jr(3, j) = v(idx::s2m).imag() * inv_n;
        jr(4, j) = v(idx::s12).real() * inv_n;
        jr(5, j) = v(idx::s12).imag() * inv_n;
        jr(6, j) = v(idx::w1).real() * inv_n;
        jr(7, j) = v(idx::w2).real() * inv_n;
        jr(8, j) = v(idx::a1).real();
        jr(9, j) = v(idx::a1).imag();
        jr(10, j) = v(idx::a2).real();
        jr(11, j) = v(idx::a2).imag();
    }
    return jr;
}

bool populations_physical(const PhysicalParams& p, const Vec12& x) {
    const auto pop = populations(p.N, x(idx::w1).real(), x(idx::w2).real());
    const double slack = 1e-6 * p.N;
    return pop.p0 > -slack && pop.p1 > -slack && pop.p2 > -slack &&
           pop.p0 < p.N + slack && pop.p1 < p.N + slack && pop.p2 < p.N + slack;
}

}  // namespace

Vec12 empty_cavity_state(const PhysicalParams& p, double frac1) {
    Vec12 x = Vec12::Zero();
    const double kin = std::sqrt(p.gamma / p.tau);
    x(idx::a1) = kin * p.alpha1_in / (p.gamma / 2.0 + kI * p.Delta_c1);
    x(idx::a1d) = std::conj(x(idx::a1));
    x(idx::a2) = kin * p.alpha2_in / (p.gamma / 2.0 + kI * p.Delta_c2);
    x(idx::a2d) = std::conj(x(idx::a2));
    // all atoms in the ground manifold: p0 = 0, p1 = frac1*N
    x(idx::w1) = -frac1 * p.N;
    x(idx::w2) = -(1.0 - frac1) * p.N;
    return x;
}

NewtonResult newton_refine(const PhysicalParams& p, const Vec12& x0, const SolveOptions& opts) {
    RVec12 y = pack(x0, p.N);
    RVec12 r = residual_vec(p, unpack(y, p.N));
    double rnorm = r.cwiseAbs().maxCoeff();

    int it = 0;
    for (; it < opts.max_newton_iters && rnorm >= 0.5 * opts.residual_tol; ++it) {
        const RMat12 jr = real_jacobian(p, unpack(y, p.N));
        const Eigen::ColPivHouseholderQR<RMat12> qr(jr);
        if (!qr.isInvertible()) break;
        const RVec12 dy = qr.solve(-r);

        // backtracking line search on the residual norm
        double lambda = 1.0;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            const RVec12 y_try = y + lambda * dy;
            const RVec12 r_try = residual_vec(p, unpack(y_try, p.N));
            const double rn_try = r_try.cwiseAbs().maxCoeff();
            if (std::isfinite(rn_try) && rn_try < rnorm) {
                y = y_try;
                r = r_try;
                rnorm = rn_try;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }
    return {unpack(y, p.N), rnorm, rnorm < opts.residual_tol, it};
}

double stability_margin(const PhysicalParams& p, const Vec12& x) {
    const Mat12 a = -drift_jacobian(p, x);
    Eigen::ComplexEigenSolver<Mat12> es(a, /*computeEigenvectors=*/false);
    return es.eigenvalues().real().minCoeff();
}

SteadyState pick_solution(const std::vector<SteadyState>& candidates, int preferred) {
    if (candidates.empty()) throw NoConvergence("no fixed point located");

    // Exactly marginal modes (conserved atomic directions, e.g. g = 0 or
    // an undriven transition with gamma12 = 0) are acceptable; only
    // genuinely growing modes disqualify a fixed point. `stable` stays
    // strict: every eigenvalue in the open right half plane.
    auto acceptable = [](const SteadyState& c) { return c.margin > -1e-12; };

    if (preferred >= 0 && preferred < static_cast<int>(candidates.size()) &&
        acceptable(candidates[preferred]))
        return candidates[preferred];

    const Vec12& ref = (preferred >= 0 && preferred < static_cast<int>(candidates.size()))
                           ? candidates[preferred].x
                           : candidates.front().x;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
        if (!acceptable(candidates[i])) continue;
        const double d = (candidates[i].x - ref).norm();
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    if (best < 0) {
        double best_margin = -std::numeric_limits<double>::infinity();
        for (const auto& c : candidates) best_margin = std::max(best_margin, c.margin);
        throw UnstableOnly("all located fixed points are dynamically unstable (best margin " +
                           std::to_string(best_margin) + ")");
    }
    return candidates[best];
}

SteadyState solve(const PhysicalParams& p, const SolveOptions& opts) {
    p.validate();

    std::vector<SteadyState> candidates;
    int preferred = -1;

    // adiabatic continuation: ramp the couplings up from zero, starting
    // from the closed-form empty-cavity state with atoms in |1>
    {
        Vec12 x = empty_cavity_state(p, 1.0);
        bool ok = true;
        for (int k = 1; k <= opts.ramp_steps; ++k) {
            PhysicalParams pk = p;
            const double s = static_cast<double>(k) / opts.ramp_steps;
            pk.g1 = p.g1 * s;
            pk.g2 = p.g2 * s;
            const NewtonResult nr = newton_refine(pk, x, opts);
            if (!nr.converged) {
                ok = false;
                break;
            }
            x = nr.x;
        }
        if (ok) {
            const NewtonResult nr = newton_refine(p, x, opts);
            if (nr.converged && populations_physical(p, nr.x)) {
                preferred = static_cast<int>(candidates.size());
                const double m = stability_margin(p, nr.x);
                candidates.push_back({nr.x, nr.residual, m > 0.0, m});
            }
        }
    }

    // cold multistarts; distinct fixed points only
    for (const double frac1 : {1.0, 0.0, 0.5}) {
        const NewtonResult nr = newton_refine(p, empty_cavity_state(p, frac1), opts);
        if (!nr.converged || !populations_physical(p, nr.x)) continue;
        bool duplicate = false;
        for (const auto& c : candidates)
            if ((c.x - nr.x).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + p.N)) duplicate = true;
        if (!duplicate) {
            const double m = stability_margin(p, nr.x);
            candidates.push_back({nr.x, nr.residual, m > 0.0, m});
        }
    }

    if (candidates.empty()) throw NoConvergence("solve: iteration budget exhausted");
    return pick_solution(candidates, preferred);
}

std::vector<SteadyState> continuation_scan(const PhysicalParams& p,
                                           const std::vector<double>& delta_L2_grid,
                                           const SolveOptions& opts) {
    for (size_t i = 1; i < delta_L2_grid.size(); ++i)
        if (delta_L2_grid[i] < delta_L2_grid[i - 1])
            throw std::invalid_argument("continuation_scan: grid must be monotone");

    std::vector<SteadyState> out;
    out.reserve(delta_L2_grid.size());
    for (size_t i = 0; i < delta_L2_grid.size(); ++i) {
        PhysicalParams pi = p;
        pi.delta_L2 = delta_L2_grid[i];
        try {
            if (i == 0) {
                out.push_back(solve(pi, opts));
            } else {
                const NewtonResult nr = newton_refine(pi, out.back().x, opts);
                const double m = (nr.converged && populations_physical(pi, nr.x))
                                     ? stability_margin(pi, nr.x)
                                     : -1.0;
                if (m > -1e-12) {
                    out.push_back({nr.x, nr.residual, m > 0.0, m});
                } else {
                    out.push_back(solve(pi, opts));  // cold restart
                }
            }
        } catch (const std::exception& e) {
            throw ScanError(static_cast<int>(i), e.what());
        }
    }
    return out;
}

}  // namespace eit
