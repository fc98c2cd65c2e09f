#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eit {

// Adaptive Dormand-Prince 5(4) integrator for Eigen-valued states.
// Rhs signature: State f(double t, const State& y). Error control is on
// the max-abs of the embedded difference against atol + rtol*|y|.
template <typename State, typename Rhs>
State integrate_ode(Rhs&& rhs, State y, double t0, double t1, double rtol = 1e-10,
                    double atol = 1e-12, double h_init = 0.0) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 4th-order weights (for the error estimate)
    static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                            e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

    double t = t0;
    double h = h_init > 0.0 ? h_init : (t1 - t0) * 1e-3;
    const double h_min = (t1 - t0) * 1e-14;
    int n_steps = 0;

    while (t < t1) {
        if (n_steps++ > 50'000'000) throw std::runtime_error("integrate_ode: step budget exhausted");
        h = std::min(h, t1 - t);

        const State k1 = rhs(t, y);
        const State k2 = rhs(t + c2 * h, (y + h * a21 * k1).eval());
        const State k3 = rhs(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
        const State k4 = rhs(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
        const State k5 =
            rhs(t + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
        const State k6 = rhs(
            t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
        const State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = rhs(t + h, y5);
        const State y4 =
            y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double err = (y5 - y4).cwiseAbs().maxCoeff();
        const double tol = atol + rtol * std::max(y.cwiseAbs().maxCoeff(),
                                                  y5.cwiseAbs().maxCoeff());
        if (err <= tol || h <= h_min) {
            t += h;
            y = y5;
        }
        const double safety =
            err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(safety, 0.2, 5.0);
        h = std::max(h, h_min);
    }
    return y;
}

}  // namespace eit
