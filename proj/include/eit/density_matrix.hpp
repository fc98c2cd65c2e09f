#pragma once

#include "eit/params.hpp"
#include "eit/state.hpp"

namespace eit {

// Independent single-atom master-equation integrator used as an oracle
// against the operator-side drift. Deliberately coded in the
// Schroedinger picture with explicit matrix products; it shares no code
// path with the adjoint-generator machinery in model.cpp.

// Right-hand side d(rho)/dt at fixed complex field amplitudes a1, a2.
Mat3 liouvillian_rhs(const PhysicalParams& p, cplx a1, cplx a2, const Mat3& rho);

// Propagates rho0 to time t_end at fixed field amplitudes. Trace is
// preserved to 1e-10 and positivity to -1e-9 (checked).
Mat3 integrate_density_matrix(const PhysicalParams& p, cplx a1, cplx a2, const Mat3& rho0,
                              double t_end);

// Expectation vector of the eight atomic components (collective units,
// i.e. multiplied by N) for a given single-atom density matrix.
Eigen::Matrix<cplx, 8, 1> atomic_expectations(const Mat3& rho, double n_atoms);

}  // namespace eit
