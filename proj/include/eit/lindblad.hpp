#pragma once

#include <vector>

#include "eit/params.hpp"
#include "eit/state.hpp"

namespace eit {

// Single-atom operators in the rotating frame, basis {|0>, |1>, |2>}
// with |0> the excited state. sigma(i,j) = |i><j|.
Mat3 sigma_op(int i, int j);

// The single-atom operator whose collective expectation is state
// component k (k in [s1m .. w2]).
Mat3 atomic_operator(int k);

// Rotating-frame single-atom Hamiltonian (units hbar = 1):
//   H = delta_L1 |1><1| + delta_L2 |2><2|
//     + g1 (a1 |0><1| + a1d |1><0|) + g2 (a2 |0><2| + a2d |2><0|).
// a1d/a2d are independent arguments so the mean-field drift extends to
// unpaired complex states; pass conj(a1), conj(a2) for physical fields.
Mat3 rotating_hamiltonian(const PhysicalParams& p, cplx a1, cplx a1d, cplx a2, cplx a2d);

// Dissipative part of the Lindblad generator of the three-level atom:
// radiative decay |0> -> |1>, |0> -> |2> plus optional ground-state
// dephasing. Hamiltonian held separately because it depends on the
// instantaneous field amplitudes.
struct LindbladGenerator {
    Mat3 hamiltonian_single;     // hermitian for physical field amplitudes
    std::vector<Mat3> jump_ops;  // L1 = sqrt(Gamma1)|1><0|, L2 = sqrt(Gamma2)|2><0|,
                                 // L3 = sqrt(gamma12/2)(|1><1| - |2><2|) when gamma12 > 0

    // Adjoint (Heisenberg-picture) generator,
    //   G+(X) = i[H, X] + sum_k (Lk+ X Lk - {Lk+ Lk, X}/2).
    Mat3 adjoint(const Mat3& x) const;

    // Schroedinger-picture generator on density matrices,
    //   G(rho) = -i[H, rho] + sum_k (Lk rho Lk+ - {Lk+ Lk, rho}/2).
    Mat3 apply(const Mat3& rho) const;
};

LindbladGenerator build_generator(const PhysicalParams& p, cplx a1, cplx a2);

// Variant taking the conjugate amplitudes independently; used by the
// drift and Jacobian code on the complex-extended state space.
LindbladGenerator build_generator_ext(const PhysicalParams& p, cplx a1, cplx a1d, cplx a2,
                                      cplx a2d);

}  // namespace eit
