#include "eit/trajectory.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "eit/errors.hpp"

namespace eit {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer
    std::uint64_t z = seed ^ (index * 0x9E3779B97F4A7C15ULL) ^ 0xD1B54A32D192ED03ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double NormalSampler::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // uniforms in (0,1]; 53-bit mantissa
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::vector<Eigen::VectorXcd> simulate_trajectory(const Eigen::MatrixXcd& a,
                                                  const TrajectoryConfig& cfg,
                                                  std::uint64_t trajectory_index) {
    const int n = static_cast<int>(a.rows());
    const int k = static_cast<int>(cfg.noise_factorization.cols());
    NormalSampler normal(derive_seed(cfg.seed, trajectory_index));

    const double sqrt_dt = std::sqrt(cfg.dt);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXd xi(k);

    std::vector<Eigen::VectorXcd> recorded;
    recorded.reserve(cfg.n_steps);
    const int total = cfg.burn_in_steps + cfg.n_steps;
    for (int m = 0; m < total; ++m) {
        for (int j = 0; j < k; ++j) xi(j) = normal();
        x += cfg.dt * (-(a * x)) + sqrt_dt * (cfg.noise_factorization * xi);
        if (x.cwiseAbs().maxCoeff() > 1e6)
            throw UnstableIntegration("simulate_trajectory: state norm exceeded 1e6 at step " +
                                      std::to_string(m));
        if (m >= cfg.burn_in_steps) recorded.push_back(x);
    }
    return recorded;
}

std::vector<Eigen::MatrixXcd> simulate_psd(const Eigen::MatrixXcd& a,
                                           const TrajectoryConfig& cfg,
                                           const std::vector<double>& omega_grid) {
    const int n = static_cast<int>(a.rows());
    if (cfg.noise_factorization.rows() != n)
        throw std::invalid_argument("simulate_psd: B row count must match A");
    {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
        if (es.eigenvalues().real().minCoeff() <= 0.0)
            throw std::invalid_argument("simulate_psd: A must be stable");
        if (cfg.dt * es.eigenvalues().cwiseAbs().maxCoeff() >= 0.1)
            throw std::invalid_argument("simulate_psd: dt * max|eig(A)| must be < 0.1");
    }

    const int nw = static_cast<int>(omega_grid.size());
    const int m_steps = cfg.n_steps;

    // window and its power normalization U = dt * sum w^2
    Eigen::VectorXd window(m_steps);
    if (cfg.hann_window) {
        for (int m = 0; m < m_steps; ++m)
            window(m) = 0.5 * (1.0 - std::cos(2.0 * M_PI * m / (m_steps - 1)));
    } else {
        window.setOnes();
    }
    const double u_norm = cfg.dt * window.squaredNorm();

    std::vector<Eigen::MatrixXcd> mean(nw, Eigen::MatrixXcd::Zero(n, n));
    std::vector<Eigen::VectorXcd> amp(nw);

    for (int t = 0; t < cfg.n_trajectories; ++t) {
        const std::vector<Eigen::VectorXcd> path = simulate_trajectory(a, cfg, t);
        for (int j = 0; j < nw; ++j) amp[j].setZero(n);

        for (int j = 0; j < nw; ++j) {
            const cplx step_phase = std::polar(1.0, omega_grid[j] * cfg.dt);
            cplx phase(1.0, 0.0);
            Eigen::VectorXcd& acc = amp[j];
            for (int m = 0; m < m_steps; ++m) {
                acc += (window(m) * cfg.dt * phase) * path[m];
                phase *= step_phase;
            }
        }
        for (int j = 0; j < nw; ++j)
            mean[j] += (amp[j] * amp[j].adjoint() - mean[j]) / static_cast<double>(t + 1);
    }
    for (int j = 0; j < nw; ++j) mean[j] /= u_norm;
    return mean;
}

PsdSurrogate make_psd_surrogate(const Eigen::MatrixXcd& d) {
    const Eigen::MatrixXcd herm = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);

    const int n = static_cast<int>(d.rows());
    int rank = 0;
    const double cutoff = 1e-14 * lam.maxCoeff();
    for (int i = 0; i < n; ++i)
        if (lam(i) > cutoff) ++rank;

    PsdSurrogate out;
    out.B.resize(n, rank);
    int col = 0;
    for (int i = 0; i < n; ++i)
        if (lam(i) > cutoff) out.B.col(col++) = es.eigenvectors().col(i) * std::sqrt(lam(i));
    out.D_test = out.B * out.B.adjoint();
    return out;
}

}  // namespace eit
