#include "eit/fluctuations.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "eit/errors.hpp"
#include "eit/lindblad.hpp"
#include "eit/model.hpp"

namespace eit {

namespace {

// Asserts the conjugation symmetry P conj(M) P = M at working precision,
// then returns the exactly symmetrized matrix.
Mat12 symmetrize_conj(const Mat12& m, const char* what) {
    const Mat12 mirrored = conj_permuted(m);
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - mirrored).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
        throw std::logic_error(std::string(what) + ": conjugation symmetry violated");
    return 0.5 * (m + mirrored);
}

// Force covariances in the conjugate-column indexing are hermitian (the
// ordering asymmetry of quantum noise lands paired slots on the
// diagonal, not on transposed entries). Assert, then hermitize exactly.
Mat12 hermitize_checked(const Mat12& m, const char* what) {
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.adjoint().eval()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
        throw std::logic_error(std::string(what) + ": hermiticity violated");
    return 0.5 * (m + m.adjoint().eval());
}

int sector_of(int k) {
    switch (k) {
        case idx::s1m:
        case idx::s1p:
        case idx::w1:
        case idx::a1:
        case idx::a1d:
            return 1;
        case idx::s2m:
        case idx::s2p:
        case idx::w2:
        case idx::a2:
        case idx::a2d:
            return 2;
        default:
            return 0;  // ground-state coherence
    }
}

}  // namespace

DriftMatrix drift_matrix(const PhysicalParams& p, const SteadyState& ss) {
    if (!(ss.residual < 1e-12))
        throw std::invalid_argument("drift_matrix: steady state not converged (residual " +
                                    std::to_string(ss.residual) + ")");
    const Mat12 a = -drift_jacobian(p, ss.x);
    return {symmetrize_conj(a, "drift_matrix")};
}

cplx einstein_coefficient(const PhysicalParams& p, cplx a1, cplx a2, const Mat3& rho,
                          const Mat3& sig_mu, const Mat3& sig_nu) {
    const LindbladGenerator gen = build_generator(p, a1, a2);
    const Mat3 term = gen.adjoint(sig_mu * sig_nu) - sig_mu * gen.adjoint(sig_nu) -
                      gen.adjoint(sig_mu) * sig_nu;
    return (rho * term).trace();
}

DiffusionMatrix diffusion_matrix(const PhysicalParams& p, const SteadyState& ss) {
    const Mat3 rho = rho_from_state(ss.x, p.N);
    {
        const Mat3 herm = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat3> es(herm);
        if (es.eigenvalues().minCoeff() < -1e-9)
            throw NonPhysicalState("diffusion_matrix: single-atom density matrix has eigenvalue " +
                                   std::to_string(es.eigenvalues().minCoeff()));
    }

    DiffusionMatrix out;
    out.atomic = Mat12::Zero();
    out.input = Mat12::Zero();

    // column nu carries the conjugate partner: D[mu,nu] = <F_mu F_P(nu)>
    const cplx a1 = ss.x(idx::a1);
    const cplx a2 = ss.x(idx::a2);
    for (int mu = idx::s1m; mu <= idx::w2; ++mu)
        for (int nu = idx::s1m; nu <= idx::w2; ++nu)
            out.atomic(mu, nu) =
                p.N * einstein_coefficient(p, a1, a2, rho, atomic_operator(mu),
                                           atomic_operator(kConjPair[nu]));

    // input noise: vacuum <dA_in dA_in+> = delta plus classical amplitude
    // noise of variance (fano - 1)/4 along the mean input phase
    const double kappa = p.gamma / p.tau;
    auto fill_field = [&](int ia, int iad, double fano, cplx alpha_in) {
        const double s2 = (fano - 1.0) / 4.0;
        const double phi = std::abs(alpha_in) > 0.0 ? std::arg(alpha_in) : 0.0;
        const cplx e2 = std::polar(1.0, 2.0 * phi);
        out.input(ia, ia) = kappa * (1.0 + s2);   // <F_a conj(F_a)> ~ <dA dA+>
        out.input(iad, iad) = kappa * s2;         // <F_a+ conj(F_a+)> ~ <dA+ dA>
        out.input(ia, iad) = kappa * s2 * e2;     // <F_a conj(F_a+)> ~ <dA dA>
        out.input(iad, ia) = kappa * s2 * std::conj(e2);
    };
    fill_field(idx::a1, idx::a1d, p.fano1_in, p.alpha1_in);
    fill_field(idx::a2, idx::a2d, p.fano2_in, p.alpha2_in);

    out.atomic = hermitize_checked(out.atomic, "diffusion_matrix(atomic)");
    out.input = hermitize_checked(out.input, "diffusion_matrix(input)");
    out.D_corr = out.atomic + out.input;
    {
        // <G G+> structure: the force covariance is positive semidefinite
        Eigen::SelfAdjointEigenSolver<Mat12> es(out.D_corr);
        const double scale = out.D_corr.cwiseAbs().maxCoeff();
        if (es.eigenvalues().minCoeff() < -1e-9 * (1.0 + scale))
            throw NonPhysicalState("diffusion_matrix: force covariance not positive, eigenvalue " +
                                   std::to_string(es.eigenvalues().minCoeff()));
    }
    return out;
}

Mat12 to_bilinear(const Mat12& d_corr) {
    Mat12 out;
    for (int j = 0; j < 12; ++j) out.col(j) = d_corr.col(kConjPair[j]);
    return out;
}

void decouple_transitions(Mat12& a, Mat12& d) {
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            if (i == j) continue;
            const int si = sector_of(i), sj = sector_of(j);
            if (si != sj || si == 0 || sj == 0) {
                a(i, j) = 0.0;
                d(i, j) = 0.0;
            }
        }
    // coherence rows keep their damping diagonal in A so the matrix stays
    // stable; their noise is irrelevant once decoupled
    d(idx::s12, idx::s12) = 0.0;
    d(idx::s12p, idx::s12p) = 0.0;
}

}  // namespace eit
