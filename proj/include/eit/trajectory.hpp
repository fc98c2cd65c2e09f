#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "eit/state.hpp"

namespace eit {

// Stochastic-trajectory validator for the frequency-domain pipeline:
// integrates d(dx) = -A dx dt + B dW with real standard Wiener
// increments and estimates the spectral matrix by trajectory-averaged
// windowed periodograms. The estimator converges to
//   S(w) = (A - i w I)^{-1} (B B^+) (A^+ + i w I)^{-1},
// i.e. the analytic spectral matrix built from D_test = B B^+.
struct TrajectoryConfig {
    double dt = 1e-2;
    int n_steps = 1 << 14;
    int n_trajectories = 2000;
    std::uint64_t seed = 1;
    Eigen::MatrixXcd noise_factorization;  // n x k matrix B, D_test = B B^+
    int burn_in_steps = 0;                 // discarded before recording
    bool hann_window = true;
};

// Deterministic per-index child seed (splitmix64 of seed ^ index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Portable standard-normal generator: Box-Muller over mt19937_64. Avoids
// std::normal_distribution, whose algorithm is implementation-defined;
// runs must be bit reproducible across platforms.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
    double operator()();

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// One Euler-Maruyama path of length (burn_in + n_steps), returning the
// recorded portion. No dt validity checks here; simulate_psd enforces
// them. Throws UnstableIntegration when the state norm exceeds 1e6.
std::vector<Eigen::VectorXcd> simulate_trajectory(const Eigen::MatrixXcd& a,
                                                  const TrajectoryConfig& cfg,
                                                  std::uint64_t trajectory_index);

// Averaged periodogram estimates of the spectral matrix at the requested
// frequencies. Validates A stable and dt * max|eig(A)| < 0.1. The
// trajectory loop is sequential in index order; results are bit
// reproducible for a fixed (seed, dt, n_steps, n_trajectories).
std::vector<Eigen::MatrixXcd> simulate_psd(const Eigen::MatrixXcd& a,
                                           const TrajectoryConfig& cfg,
                                           const std::vector<double>& omega_grid);

// PSD surrogate for a physical (generally non-PSD in bilinear ordering)
// diffusion matrix: hermitian part with negative eigenvalues clipped.
// Returns B with B B^+ = D_test and D_test itself.
struct PsdSurrogate {
    Eigen::MatrixXcd B;
    Eigen::MatrixXcd D_test;
};
PsdSurrogate make_psd_surrogate(const Eigen::MatrixXcd& d);

}  // namespace eit
