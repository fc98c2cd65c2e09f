#pragma once

#include "eit/lindblad.hpp"
#include "eit/params.hpp"
#include "eit/state.hpp"

namespace eit {

// Single-atom density matrix reconstructed from the collective state
// (atomic components divided by N, populations from the inversions and
// the trace constraint p0 + p1 + p2 = N). Non-hermitian input states map
// to non-hermitian matrices; that is intended, the mean-field equations
// are evaluated on the complex-extended state space.
Mat3 rho_from_state(const Vec12& x, double n_atoms);

// Mean-field equations of motion, f(x) = dx/dt. Atomic rows come from the
// adjoint Lindblad generator with the instantaneous field amplitudes,
//   f_mu = N Tr[rho(x) G+(sigma_mu)],
// field rows are the cavity equations
//   dA1/dt = -(gamma/2 + i Delta_c1) A1 - i (g1/tau) S1m + sqrt(gamma/tau) alpha1_in
// and the conjugates. f maps physical states to physical tangents:
// f(P conj x) = P conj f(x).
Vec12 drift(const PhysicalParams& p, const Vec12& x);

// Analytic Jacobian J[mu][nu] = d f_mu / d x_nu on the complex-extended
// space (all 12 components independent). Exact: the drift is bilinear.
Mat12 drift_jacobian(const PhysicalParams& p, const Vec12& x);

// Central finite-difference Jacobian of drift(); steps are taken per
// component, scaled by `scale` for the atomic entries (tests pass N so
// the relative perturbation stays sane for collective variables).
Mat12 drift_jacobian_fd(const PhysicalParams& p, const Vec12& x, double step,
                        double atomic_scale = 1.0);

}  // namespace eit
