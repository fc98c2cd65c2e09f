#include "eit/lindblad.hpp"

#include <cmath>
#include <stdexcept>

namespace eit {

namespace {
const cplx kI(0.0, 1.0);
}

Mat3 sigma_op(int i, int j) {
    Mat3 m = Mat3::Zero();
    m(i, j) = 1.0;
    return m;
}

Mat3 atomic_operator(int k) {
    switch (k) {
        case idx::s1m:
            return sigma_op(1, 0);
        case idx::s1p:
            return sigma_op(0, 1);
        case idx::s2m:
            return sigma_op(2, 0);
        case idx::s2p:
            return sigma_op(0, 2);
        case idx::s12:
            return sigma_op(2, 1);
        case idx::s12p:
            return sigma_op(1, 2);
        case idx::w1:
            return sigma_op(0, 0) - sigma_op(1, 1);
        case idx::w2:
            return sigma_op(0, 0) - sigma_op(2, 2);
        default:
            throw std::out_of_range("atomic_operator: field index " + std::to_string(k));
    }
}

Mat3 rotating_hamiltonian(const PhysicalParams& p, cplx a1, cplx a1d, cplx a2, cplx a2d) {
    Mat3 h = Mat3::Zero();
    h(1, 1) = p.delta_L1;
    h(2, 2) = p.delta_L2;
    h(0, 1) = p.g1 * a1;
    h(1, 0) = p.g1 * a1d;
    h(0, 2) = p.g2 * a2;
    h(2, 0) = p.g2 * a2d;
    return h;
}

Mat3 LindbladGenerator::adjoint(const Mat3& x) const {
    Mat3 out = kI * (hamiltonian_single * x - x * hamiltonian_single);
    for (const Mat3& l : jump_ops) {
        const Mat3 ld = l.adjoint();
        const Mat3 ldl = ld * l;
        out += ld * x * l - 0.5 * (ldl * x + x * ldl);
    }
    return out;
}

Mat3 LindbladGenerator::apply(const Mat3& rho) const {
    Mat3 out = -kI * (hamiltonian_single * rho - rho * hamiltonian_single);
    for (const Mat3& l : jump_ops) {
        const Mat3 ld = l.adjoint();
        const Mat3 ldl = ld * l;
        out += l * rho * ld - 0.5 * (ldl * rho + rho * ldl);
    }
    return out;
}

LindbladGenerator build_generator_ext(const PhysicalParams& p, cplx a1, cplx a1d, cplx a2,
                                      cplx a2d) {
    LindbladGenerator gen;
    gen.hamiltonian_single = rotating_hamiltonian(p, a1, a1d, a2, a2d);
    gen.jump_ops.push_back(std::sqrt(p.Gamma1) * sigma_op(1, 0));
    gen.jump_ops.push_back(std::sqrt(p.Gamma2) * sigma_op(2, 0));
    if (p.gamma12 > 0.0) {
        // normalized so the |1><2| coherence decays at rate gamma12
        gen.jump_ops.push_back(std::sqrt(p.gamma12 / 2.0) *
                               (sigma_op(1, 1) - sigma_op(2, 2)));
    }
    return gen;
}

LindbladGenerator build_generator(const PhysicalParams& p, cplx a1, cplx a2) {
    return build_generator_ext(p, a1, std::conj(a1), a2, std::conj(a2));
}

}  // namespace eit
