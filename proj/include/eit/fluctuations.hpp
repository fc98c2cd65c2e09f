#pragma once

#include "eit/params.hpp"
#include "eit/state.hpp"
#include "eit/steady_state.hpp"

namespace eit {

// Linear-response matrix of fluctuations around the steady state, sign
// convention d(dx)/dt = -A dx + F. Index convention identical to
// StateVector; collective atomic units.
struct DriftMatrix {
    Mat12 A;
};

// Delta-correlated Langevin-force covariance. The column index labels
// the conjugate-partner force, so
//   <F_mu(t) F_P(nu)(t')> = D_corr[mu,nu] delta(t - t'),
// with P the conjugate-pair permutation (e.g. D[a1,a1] carries the
// ordered <F_a1 F_a1+> vacuum correlator). Non-symmetrized: operator
// order matters and every downstream formula uses this one convention.
// In this indexing D_corr is hermitian and P conj(D) P = D. `atomic` and
// `input` record the additive split for diagnostics.
struct DiffusionMatrix {
    Mat12 D_corr;
    Mat12 atomic;
    Mat12 input;
};

// Bilinear reindexing <F_mu F_nu> = D_corr[mu, P(nu)] used where the
// <dx dx^T>-ordered combination is required (output contractions).
Mat12 to_bilinear(const Mat12& d_corr);

// A = -Jacobian of drift() at the steady state. Throws when
// ss.residual >= 1e-12 (linearization point must be converged).
DriftMatrix drift_matrix(const PhysicalParams& p, const SteadyState& ss);

// Langevin-force correlations: atomic block from the generalized
// Einstein relation at the steady-state fields, scaled by N; input-field
// block from the input noise statistics (vacuum plus classical excess
// for fano_in > 1). Throws NonPhysicalState when the single-atom density
// matrix reconstructed from ss has an eigenvalue below -1e-9.
DiffusionMatrix diffusion_matrix(const PhysicalParams& p, const SteadyState& ss);

// Single-atom Einstein-relation coefficients for one operator pair,
//   <F_mu F_nu> = <G+(s_mu s_nu)> - <s_mu G+(s_nu)> - <G+(s_mu) s_nu>,
// expectations in the given (trace-1) density matrix, fields a1, a2.
// Exposed for the oracle tests; diffusion_matrix uses it internally.
cplx einstein_coefficient(const PhysicalParams& p, cplx a1, cplx a2, const Mat3& rho,
                          const Mat3& sig_mu, const Mat3& sig_nu);

// Diagnostic null model for the correlation-coherence link: removes the
// steady ground-state coherence and every coupling between the two
// transition sectors from A and D, leaving two independent two-level
// subsystems. Output-field cross spectra vanish identically afterwards.
void decouple_transitions(Mat12& a, Mat12& d);

}  // namespace eit
