#include "eit/model.hpp"

#include <cmath>

namespace eit {

namespace {

const cplx kI(0.0, 1.0);

cplx trace_prod(const Mat3& a, const Mat3& b) { return (a * b).trace(); }

// d(rho)/d(x_nu) * N for the eight atomic components.
Mat3 rho_basis(int nu) {
    switch (nu) {
        case idx::s1m:
            return sigma_op(0, 1);  // rho(0,1) slot holds <S1->/N
        case idx::s1p:
            return sigma_op(1, 0);
        case idx::s2m:
            return sigma_op(0, 2);
        case idx::s2p:
            return sigma_op(2, 0);
        case idx::s12:
            return sigma_op(1, 2);
        case idx::s12p:
            return sigma_op(2, 1);
        case idx::w1: {
            Mat3 m = Mat3::Zero();
            m(0, 0) = 1.0 / 3.0;
            m(1, 1) = -2.0 / 3.0;
            m(2, 2) = 1.0 / 3.0;
            return m;
        }
        case idx::w2: {
            Mat3 m = Mat3::Zero();
            m(0, 0) = 1.0 / 3.0;
            m(1, 1) = 1.0 / 3.0;
            m(2, 2) = -2.0 / 3.0;
            return m;
        }
        default:
            return Mat3::Zero();
    }
}

}  // namespace

Mat3 rho_from_state(const Vec12& x, double n_atoms) {
    const double inv_n = 1.0 / n_atoms;
    const cplx u_w1 = x(idx::w1) * inv_n;
    const cplx u_w2 = x(idx::w2) * inv_n;
    const cplx p0 = (1.0 + u_w1 + u_w2) / 3.0;
    Mat3 rho;
    rho(0, 0) = p0;
    rho(1, 1) = p0 - u_w1;
    rho(2, 2) = p0 - u_w2;
    rho(0, 1) = x(idx::s1m) * inv_n;
    rho(1, 0) = x(idx::s1p) * inv_n;
    rho(0, 2) = x(idx::s2m) * inv_n;
    rho(2, 0) = x(idx::s2p) * inv_n;
    rho(1, 2) = x(idx::s12) * inv_n;
    rho(2, 1) = x(idx::s12p) * inv_n;
    return rho;
}

Vec12 drift(const PhysicalParams& p, const Vec12& x) {
    const LindbladGenerator gen =
        build_generator_ext(p, x(idx::a1), x(idx::a1d), x(idx::a2), x(idx::a2d));
    const Mat3 rho = rho_from_state(x, p.N);

    Vec12 f;
    for (int mu = idx::s1m; mu <= idx::w2; ++mu)
        f(mu) = p.N * trace_prod(rho, gen.adjoint(atomic_operator(mu)));

    const double kin = std::sqrt(p.gamma / p.tau);
    f(idx::a1) = -(p.gamma / 2.0 + kI * p.Delta_c1) * x(idx::a1) -
                 kI * (p.g1 / p.tau) * x(idx::s1m) + kin * p.alpha1_in;
    f(idx::a1d) = -(p.gamma / 2.0 - kI * p.Delta_c1) * x(idx::a1d) +
                  kI * (p.g1 / p.tau) * x(idx::s1p) + kin * std::conj(p.alpha1_in);
    f(idx::a2) = -(p.gamma / 2.0 + kI * p.Delta_c2) * x(idx::a2) -
                 kI * (p.g2 / p.tau) * x(idx::s2m) + kin * p.alpha2_in;
    f(idx::a2d) = -(p.gamma / 2.0 - kI * p.Delta_c2) * x(idx::a2d) +
                  kI * (p.g2 / p.tau) * x(idx::s2p) + kin * std::conj(p.alpha2_in);
    return f;
}

Mat12 drift_jacobian(const PhysicalParams& p, const Vec12& x) {
    const LindbladGenerator gen =
        build_generator_ext(p, x(idx::a1), x(idx::a1d), x(idx::a2), x(idx::a2d));
    const Mat3 rho = rho_from_state(x, p.N);

    // dH/d(field component); the interaction is linear in each amplitude
    Mat3 dh[4];
    dh[0] = p.g1 * sigma_op(0, 1);  // d/d a1
    dh[1] = p.g1 * sigma_op(1, 0);  // d/d a1d
    dh[2] = p.g2 * sigma_op(0, 2);  // d/d a2
    dh[3] = p.g2 * sigma_op(2, 0);  // d/d a2d

    Mat12 jac = Mat12::Zero();
    for (int mu = idx::s1m; mu <= idx::w2; ++mu) {
        const Mat3 sig = atomic_operator(mu);
        const Mat3 gsig = gen.adjoint(sig);
        for (int nu = idx::s1m; nu <= idx::w2; ++nu)
            jac(mu, nu) = trace_prod(rho_basis(nu), gsig);
        for (int k = 0; k < 4; ++k) {
            const Mat3 commut = kI * (dh[k] * sig - sig * dh[k]);
            jac(mu, idx::a1 + k) = p.N * trace_prod(rho, commut);
        }
    }

    jac(idx::a1, idx::a1) = -(p.gamma / 2.0 + kI * p.Delta_c1);
    jac(idx::a1, idx::s1m) = -kI * p.g1 / p.tau;
    jac(idx::a1d, idx::a1d) = -(p.gamma / 2.0 - kI * p.Delta_c1);
    jac(idx::a1d, idx::s1p) = kI * p.g1 / p.tau;
    jac(idx::a2, idx::a2) = -(p.gamma / 2.0 + kI * p.Delta_c2);
    jac(idx::a2, idx::s2m) = -kI * p.g2 / p.tau;
    jac(idx::a2d, idx::a2d) = -(p.gamma / 2.0 - kI * p.Delta_c2);
    jac(idx::a2d, idx::s2p) = kI * p.g2 / p.tau;
    return jac;
}

Mat12 drift_jacobian_fd(const PhysicalParams& p, const Vec12& x, double step,
                        double atomic_scale) {
    Mat12 jac;
    for (int nu = 0; nu < 12; ++nu) {
        const double h = step * (nu <= idx::w2 ? atomic_scale : 1.0);
        Vec12 xp = x, xm = x;
        xp(nu) += h;
        xm(nu) -= h;
        jac.col(nu) = (drift(p, xp) - drift(p, xm)) / (2.0 * h);
    }
    return jac;
}

}  // namespace eit
