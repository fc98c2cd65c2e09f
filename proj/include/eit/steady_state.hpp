#pragma once

#include <vector>

#include "eit/params.hpp"
#include "eit/state.hpp"

namespace eit {

// Fixed point of the mean-field equations. `residual` is the max-abs of
// the reduced residual vector actually solved: atomic rows divided by N
// (per-atom units), field rows as-is. `stable` means every eigenvalue of
// the drift matrix A = -J has positive real part (dx/dt = -A dx decays).
struct SteadyState {
    Vec12 x = Vec12::Zero();
    double residual = 0.0;
    bool stable = false;
    double margin = 0.0;  // min Re eig(A); > 0 iff stable
};

struct SolveOptions {
    int max_newton_iters = 200;
    int ramp_steps = 10;       // adiabatic continuation 0 -> g
    double residual_tol = 1e-12;
};

// Closed-form state of the system with couplings off: cavity fields at
// their linear steady values, atoms distributed over the ground states
// with fraction `frac1` in |1> and the rest in |2>, no coherences.
Vec12 empty_cavity_state(const PhysicalParams& p, double frac1);

// Newton iteration from a given start; returns the refined state and its
// residual. Does not throw on stall, reports converged = false instead.
struct NewtonResult {
    Vec12 x;
    double residual;
    bool converged;
    int iterations;
};
NewtonResult newton_refine(const PhysicalParams& p, const Vec12& x0,
                           const SolveOptions& opts = {});

// Branch policy applied to a list of converged candidates: prefer the
// one reached by adiabatic continuation (index `preferred`) when stable,
// otherwise the stable candidate closest to it. Throws UnstableOnly when
// no candidate is stable.
SteadyState pick_solution(const std::vector<SteadyState>& candidates, int preferred);

// Full solve: adiabatic continuation from the empty-cavity |1>-seeded
// state, with |2>-seeded and mixed multistarts as fallback. Params are
// used as given; feed Gamma-normalized values (see nondimensionalize)
// for well-scaled iterations. Throws NoConvergence / UnstableOnly.
SteadyState solve(const PhysicalParams& p, const SolveOptions& opts = {});

// Steady states along a probe-detuning grid, each point seeded from the
// previous one; falls back to a cold solve on a failed warm start.
// Errors are rethrown as ScanError carrying the grid index.
std::vector<SteadyState> continuation_scan(const PhysicalParams& p,
                                           const std::vector<double>& delta_L2_grid,
                                           const SolveOptions& opts = {});

// min Re eig(A) at x, with A = -drift_jacobian; positive means stable.
double stability_margin(const PhysicalParams& p, const Vec12& x);

}  // namespace eit
