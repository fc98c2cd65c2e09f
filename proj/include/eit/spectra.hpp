#pragma once

#include <optional>
#include <vector>

#include "eit/fluctuations.hpp"
#include "eit/params.hpp"
#include "eit/state.hpp"
#include "eit/steady_state.hpp"

namespace eit {

// Frequency-domain covariance of the intracavity fluctuations at
// analysis frequency omega,
//   S(w) = (A - i w I)^{-1} D_corr (A^+ + i w I)^{-1},
// under d(dx)/dt = -A dx + F with D_corr in the conjugate-column
// ordering of DiffusionMatrix; S is then hermitian positive and
// S[mu,mu] is the power spectral density of component mu. The two
// resolvents are kept because the output-field contractions also need
// the bilinear combination R(w) D R(-w)^T.
struct SpectralMatrix {
    double omega = 0.0;
    Mat12 S = Mat12::Zero();
    Mat12 resolvent_minus = Mat12::Zero();  // (A - i w I)^{-1}
    Mat12 resolvent_plus = Mat12::Zero();   // (A + i w I)^{-1}
};

// One row of a detuning scan. All noise powers are shot-normalized
// (1 = coherent beam of the same mean power); detuning and omega are in
// the caller's rate units (Gamma units in the CLI pipeline).
struct SpectrumRecord {
    double delta_L2 = 0.0;
    double omega = 0.0;
    double s_pump = 0.0;   // output amplitude-quadrature noise, field 1
    double s_probe = 0.0;  // field 2
    double fano_pump = 0.0;
    double fano_probe = 0.0;
    double s_sum = 0.0;   // shot-normalized noise of the summed photocurrents
    double s_diff = 0.0;  // and of the difference
    double correlation_2C = 0.0;    // 4 |a1out||a2out| Re S_X1X2
    double correlation_norm = 0.0;  // (s_sum - s_diff)/4, dimensionless
};

// Throws std::invalid_argument for unstable A and SingularResolvent when
// cond(A - i w I) > 1e14.
SpectralMatrix spectral_matrix(const DriftMatrix& a, const DiffusionMatrix& d, double omega);

// Output-field quadrature noise via dA_out = sqrt(gamma tau) dA - dA_in,
// amplitude quadratures taken relative to the steady-state output phase.
// Input-intracavity correlations are evaluated from the stored
// resolvents; spectra are symmetrized over +-omega. Fills the quadrature
// and Fano fields. Throws ZeroOutputField when an output is dark.
SpectrumRecord output_spectra(const SpectralMatrix& s, const PhysicalParams& p,
                              const SteadyState& ss, double omega,
                              const DiffusionMatrix& d);

// Same pipeline, additionally filling s_sum, s_diff and the correlation
// fields from the cross quadrature spectrum of the two output beams.
SpectrumRecord correlation_record(const SpectralMatrix& s, const PhysicalParams& p,
                                  const SteadyState& ss, double omega,
                                  const DiffusionMatrix& d);

// Mean output amplitude of field k (1 or 2) at the steady state.
cplx output_amplitude(const PhysicalParams& p, const SteadyState& ss, int field);

struct ScanOptions {
    bool force_zero_coherence = false;  // diagnostic: decouple_transitions on A, D
    int n_threads = 1;                  // spectra phase parallelism
    SolveOptions solver = {};
};

// Linearization and spectra at one converged steady state. `p` must
// carry the delta_L2 of this point. force_zero_coherence applies the
// decoupled-transitions diagnostic before the spectra step.
struct PointResult {
    SpectrumRecord record;
    DriftMatrix A;
    DiffusionMatrix D;
};
PointResult scan_point(const PhysicalParams& p, const SteadyState& ss, double omega,
                       bool force_zero_coherence);

// Full pipeline over a probe-detuning grid: continuation steady states,
// then per-point linearization and spectra. Deterministic; output order
// matches the grid. Per-point failures are rethrown as ScanError.
std::vector<SpectrumRecord> scan(const PhysicalParams& p, const std::vector<double>& delta_L2_grid,
                                 double omega, const ScanOptions& opts = {});

// (1/2pi) Int S(w) dw by adaptive quadrature over |w| <= 60 max|eig(A)|
// plus the analytic 1/w^2 and 1/w^4 tail corrections. Matches the
// solution of A X + X A^+ = D_corr for stable A.
Mat12 integrate_spectral_matrix(const DriftMatrix& a, const DiffusionMatrix& d);

}  // namespace eit
