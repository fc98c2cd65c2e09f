#include "eit/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "eit/ode.hpp"

namespace eit {

namespace {
const cplx kI(0.0, 1.0);
}

Mat3 liouvillian_rhs(const PhysicalParams& p, cplx a1, cplx a2, const Mat3& rho) {
    // written out longhand on purpose; this is the oracle side
    Mat3 h = Mat3::Zero();
    h(1, 1) = p.delta_L1;
    h(2, 2) = p.delta_L2;
    h(0, 1) = p.g1 * a1;
    h(1, 0) = p.g1 * std::conj(a1);
    h(0, 2) = p.g2 * a2;
    h(2, 0) = p.g2 * std::conj(a2);

    Mat3 out = -kI * (h * rho - rho * h);

    // |0> -> |1> decay
    out(1, 1) += p.Gamma1 * rho(0, 0);
    // |0> -> |2> decay
    out(2, 2) += p.Gamma2 * rho(0, 0);
    const double G = p.Gamma1 + p.Gamma2;
    out(0, 0) -= G * rho(0, 0);
    out(0, 1) -= 0.5 * G * rho(0, 1);
    out(1, 0) -= 0.5 * G * rho(1, 0);
    out(0, 2) -= 0.5 * G * rho(0, 2);
    out(2, 0) -= 0.5 * G * rho(2, 0);

    // ground-state dephasing: |1><2| coherence decays at gamma12; the
    // optical coherences pick up gamma12/4 from the same jump operator
    out(1, 2) -= p.gamma12 * rho(1, 2);
    out(2, 1) -= p.gamma12 * rho(2, 1);
    out(0, 1) -= 0.25 * p.gamma12 * rho(0, 1);
    out(1, 0) -= 0.25 * p.gamma12 * rho(1, 0);
    out(0, 2) -= 0.25 * p.gamma12 * rho(0, 2);
    out(2, 0) -= 0.25 * p.gamma12 * rho(2, 0);
    return out;
}

Mat3 integrate_density_matrix(const PhysicalParams& p, cplx a1, cplx a2, const Mat3& rho0,
                              double t_end) {
    {
        Eigen::SelfAdjointEigenSolver<Mat3> es(rho0);
        if (es.eigenvalues().minCoeff() < -1e-9)
            throw std::invalid_argument("integrate_density_matrix: rho0 not positive");
        if (std::abs(rho0.trace() - cplx(1.0)) > 1e-9)
            throw std::invalid_argument("integrate_density_matrix: rho0 trace != 1");
    }
    const Mat3 rho =
        integrate_ode([&](double, const Mat3& r) { return liouvillian_rhs(p, a1, a2, r); },
                      rho0, 0.0, t_end, 1e-11, 1e-13);

    if (std::abs(rho.trace() - cplx(1.0)) > 1e-10)
        throw std::runtime_error("integrate_density_matrix: trace drifted");
    Eigen::SelfAdjointEigenSolver<Mat3> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::runtime_error("integrate_density_matrix: positivity lost");
    return rho;
}

Eigen::Matrix<cplx, 8, 1> atomic_expectations(const Mat3& rho, double n_atoms) {
    Eigen::Matrix<cplx, 8, 1> v;
    v(idx::s1m) = rho(0, 1) * n_atoms;
    v(idx::s1p) = rho(1, 0) * n_atoms;
    v(idx::s2m) = rho(0, 2) * n_atoms;
    v(idx::s2p) = rho(2, 0) * n_atoms;
    v(idx::s12) = rho(1, 2) * n_atoms;
    v(idx::s12p) = rho(2, 1) * n_atoms;
    v(idx::w1) = (rho(0, 0) - rho(1, 1)) * n_atoms;
    v(idx::w2) = (rho(0, 0) - rho(2, 2)) * n_atoms;
    return v;
}

}  // namespace eit
