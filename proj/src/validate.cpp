#include "eit/validate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "eit/config.hpp"
#include "eit/density_matrix.hpp"
#include "eit/errors.hpp"
#include "eit/fluctuations.hpp"
#include "eit/lindblad.hpp"
#include "eit/lyapunov.hpp"
#include "eit/model.hpp"
#include "eit/ode.hpp"
#include "eit/spectra.hpp"
#include "eit/steady_state.hpp"
#include "eit/trajectory.hpp"

namespace eit {

namespace {

const cplx kI(0.0, 1.0);

PhysicalParams fig_params(const char* name) {
    return nondimensionalize(load_config(name).params);
}

double fig_omega(const char* name) { return load_config(name).omega; }

cplx random_cplx(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return scale * cplx(u(rng), u(rng));
}

// Physical collective state: populations on the simplex, coherences
// bounded by the Cauchy-Schwarz limit, paired conjugates.
Vec12 random_physical_state(std::mt19937_64& rng, double n_atoms, double field_scale,
                            double coherence_fill = 0.4) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double e0 = -std::log(u01(rng) + 1e-12), e1 = -std::log(u01(rng) + 1e-12),
           e2 = -std::log(u01(rng) + 1e-12);
    const double tot = e0 + e1 + e2;
    const double p0 = e0 / tot, p1 = e1 / tot, p2 = e2 / tot;

    auto coherence = [&](double pa, double pb) {
        const double r = coherence_fill * u01(rng) * std::sqrt(pa * pb);
        return std::polar(r, 2.0 * M_PI * u01(rng));
    };

    Vec12 x = Vec12::Zero();
    x(idx::s1m) = n_atoms * coherence(p0, p1);
    x(idx::s2m) = n_atoms * coherence(p0, p2);
    x(idx::s12) = n_atoms * coherence(p1, p2);
    x(idx::w1) = n_atoms * (p0 - p1);
    x(idx::w2) = n_atoms * (p0 - p2);
    x(idx::a1) = random_cplx(rng, field_scale);
    x(idx::a2) = random_cplx(rng, field_scale);
    return enforce_pairing(x);
}

Vec12 random_unpaired_state(std::mt19937_64& rng, double atomic_scale, double field_scale) {
    Vec12 x;
    for (int i = 0; i < 12; ++i)
        x(i) = random_cplx(rng, i <= idx::w2 ? atomic_scale : field_scale);
    return x;
}

CheckResult make_result(const std::string& name, double measured, double tol,
                        const std::string& detail = "") {
    return {name, measured < tol, measured, tol, detail};
}

// ---------------------------------------------------------------- checks

CheckResult check_params_roundtrip() {
    PhysicalParams p;
    p.g1 = 1.1e3;
    p.g2 = 0.9e3;
    p.Gamma1 = 2.0 * M_PI * 3.1e6;
    p.Gamma2 = 2.0 * M_PI * 2.6e6;
    p.gamma12 = 17.0;
    p.gamma = 5.5e5;
    p.tau = 2.4e-9;
    p.Delta_c1 = -1.7e6;
    p.Delta_c2 = 3.3e5;
    p.delta_L1 = 7.0e5;
    p.delta_L2 = -2.0e6;
    p.N = 12345.0;
    p.alpha1_in = {2.5e3, -1.5e3};
    p.alpha2_in = {0.5e3, 3.5e3};
    const PhysicalParams q = redimensionalize(nondimensionalize(p), p.gamma_total());
    double worst = 0.0;
    auto rel = [&](double a, double b) {
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
    };
    rel(q.g1, p.g1);
    rel(q.g2, p.g2);
    rel(q.Gamma1, p.Gamma1);
    rel(q.Gamma2, p.Gamma2);
    rel(q.gamma12, p.gamma12);
    rel(q.gamma, p.gamma);
    rel(q.tau, p.tau);
    rel(q.Delta_c1, p.Delta_c1);
    rel(q.delta_L2, p.delta_L2);
    rel(std::abs(q.alpha1_in - p.alpha1_in), 0.0);
    rel(std::abs(q.alpha2_in - p.alpha2_in), 0.0);
    return make_result("params-roundtrip", worst, 1e-14);
}

CheckResult check_generator_trace_preservation() {
    std::mt19937_64 rng(11);
    PhysicalParams p = fig_params("fig1a");
    p.gamma12 = 0.05;
    double worst = 0.0;
    for (int k = 0; k < 25; ++k) {
        const LindbladGenerator gen =
            build_generator(p, random_cplx(rng, 500.0), random_cplx(rng, 500.0));
        worst = std::max(worst, gen.adjoint(Mat3::Identity()).cwiseAbs().maxCoeff());
    }
    return make_result("generator-trace-preservation", worst, 1e-12);
}

CheckResult check_generator_hermiticity() {
    std::mt19937_64 rng(12);
    const PhysicalParams p = fig_params("fig1a");
    double worst = 0.0;
    for (int k = 0; k < 25; ++k) {
        const LindbladGenerator gen =
            build_generator(p, random_cplx(rng, 500.0), random_cplx(rng, 500.0));
        Mat3 h;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h(i, j) = random_cplx(rng, 1.0);
        h = (h + h.adjoint()).eval();
        const Mat3 g = gen.adjoint(h);
        worst = std::max(worst, (g - g.adjoint().eval()).cwiseAbs().maxCoeff());
        if (!gen.hamiltonian_single.isApprox(gen.hamiltonian_single.adjoint()))
            worst = std::max(worst, 1.0);
    }
    return make_result("generator-hermiticity", worst, 1e-12);
}

CheckResult check_drift_conjugation_symmetry() {
    std::mt19937_64 rng(13);
    const PhysicalParams p = fig_params("fig1a");
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Vec12 x = random_unpaired_state(rng, p.N, 600.0);
        const Vec12 lhs = drift(p, conj_permuted(x));
        const Vec12 rhs = conj_permuted(drift(p, x));
        worst = std::max(worst,
                         (lhs - rhs).cwiseAbs().maxCoeff() / (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
    return make_result("drift-conjugation-symmetry", worst, 1e-13);
}

CheckResult check_drift_oracle_match() {
    std::mt19937_64 rng(14);
    const PhysicalParams p = fig_params("fig1a");
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Vec12 x = random_physical_state(rng, p.N, 600.0);
        const Vec12 f = drift(p, x);
        const Mat3 rho = rho_from_state(x, p.N);
        const Mat3 drho = liouvillian_rhs(p, x(idx::a1), x(idx::a2), rho);
        double scale = 0.0;
        for (int mu = idx::s1m; mu <= idx::w2; ++mu)
            scale = std::max(scale, std::abs(f(mu)));
        for (int mu = idx::s1m; mu <= idx::w2; ++mu) {
            const cplx oracle = p.N * (atomic_operator(mu) * drho).trace();
            worst = std::max(worst, std::abs(f(mu) - oracle) / (1.0 + scale));
        }
    }
    return make_result("drift-oracle-match", worst, 1e-12);
}

CheckResult check_decoupling_at_zero_coupling() {
    std::mt19937_64 rng(15);
    PhysicalParams p = fig_params("fig1a");
    p.g1 = p.g2 = 0.0;
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const Mat12 j = drift_jacobian(p, random_physical_state(rng, p.N, 600.0));
        for (int mu = idx::s1m; mu <= idx::w2; ++mu)
            for (int nu = idx::a1; nu <= idx::a2d; ++nu)
                worst = std::max(worst, std::abs(j(mu, nu)));
        for (int mu = idx::a1; mu <= idx::a2d; ++mu)
            for (int nu = idx::s1m; nu <= idx::w2; ++nu)
                worst = std::max(worst, std::abs(j(mu, nu)));
    }
    return make_result("field-atom-decoupling-at-g0", worst, 1e-300, "blocks must vanish exactly");
}

CheckResult check_jacobian_fd() {
    std::mt19937_64 rng(16);
    const PhysicalParams p = fig_params("fig1a");
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Vec12 x = random_physical_state(rng, p.N, 600.0);
        const Mat12 ja = drift_jacobian(p, x);
        const Mat12 jf = drift_jacobian_fd(p, x, 1e-6, p.N);
        worst = std::max(worst, (ja - jf).cwiseAbs().maxCoeff());
    }
    return make_result("jacobian-finite-difference", worst, 1e-6);
}

CheckResult check_steady_state_contract() {
    PhysicalParams p = fig_params("fig1a");
    p.delta_L2 = 0.3;
    const SteadyState ss = solve(p);
    double worst = ss.residual;
    const auto pop = populations(p.N, ss.x(idx::w1).real(), ss.x(idx::w2).real());
    for (const double v : {pop.p0, pop.p1, pop.p2}) {
        if (v < -1e-6 * p.N) worst = std::max(worst, 1.0);
        if (v > p.N * (1.0 + 1e-6)) worst = std::max(worst, 1.0);
    }
    if (!ss.stable) worst = std::max(worst, 1.0);
    if (pairing_violation(ss.x) > 0.0) worst = std::max(worst, 1.0);
    return make_result("steady-state-contract", worst, 1e-12,
                       "residual, populations, pairing, stability");
}

CheckResult check_dark_state() {
    PhysicalParams p = fig_params("fig1a");
    p.delta_L1 = 0.0;
    p.delta_L2 = 0.0;  // two-photon resonance
    const SteadyState ss = solve(p);
    const auto pop = populations(p.N, ss.x(idx::w1).real(), ss.x(idx::w2).real());
    double worst = std::abs(pop.p0) / (1e-6 * p.N);  // scaled so tol = 1
    // pure-state signature |s12|^2 = p1 p2
    const double coh = std::norm(ss.x(idx::s12));
    const double prod = pop.p1 * pop.p2;
    worst = std::max(worst, std::abs(coh - prod) / (1e-6 * (1.0 + prod)));
    return make_result("dark-state-limit", worst, 1.0,
                       "excited population < 1e-6 N and |s12|^2 = p1 p2");
}

CheckResult check_eit_transmission() {
    const PhysicalParams p = fig_params("fig1a");
    auto probe_intensity = [&](double d) {
        PhysicalParams q = p;
        q.delta_L2 = d;
        return std::norm(solve(q).x(idx::a2));
    };
    const double peak = probe_intensity(0.0);
    const double wing = std::max(probe_intensity(0.5), probe_intensity(-0.5));
    // pass when peak >= 1.1 * wing; measured = shortfall
    const double measured = wing > 0.0 ? 1.1 - peak / wing : 1e300;
    std::ostringstream det;
    det << "peak/wing = " << std::setprecision(6) << (peak / wing);
    return make_result("eit-transmission-peak", measured, 0.0 + 1e-12, det.str());
}

CheckResult check_drift_matrix_structure() {
    PhysicalParams p = fig_params("fig1a");
    p.delta_L2 = 0.17;
    const SteadyState ss = solve(p);
    const Mat12 a = drift_matrix(p, ss).A;
    double worst = 0.0;

    // field rows carry the cavity equation and nothing else
    worst = std::max(worst, std::abs(a(idx::a1, idx::a1) - (p.gamma / 2.0 + kI * p.Delta_c1)));
    worst = std::max(worst, std::abs(a(idx::a1, idx::s1m) - kI * p.g1 / p.tau));
    for (int j = 0; j < 12; ++j)
        if (j != idx::a1 && j != idx::s1m) worst = std::max(worst, std::abs(a(idx::a1, j)));
    worst = std::max(worst, std::abs(a(idx::a2, idx::a2) - (p.gamma / 2.0 + kI * p.Delta_c2)));
    worst = std::max(worst, std::abs(a(idx::a2, idx::s2m) - kI * p.g2 / p.tau));

    // cross-field coupling rides on the ground-state coherence
    const cplx expected = kI * p.g2 * ss.x(idx::s12p);
    worst = std::max(worst,
                     std::abs(a(idx::s1m, idx::a2) - expected) / (1.0 + std::abs(expected)));

    // with one drive off the steady coherence and the coupling vanish;
    // tiny gamma12 keeps the idle ground-state coherence weakly damped
    // (with the probe off and gamma12 = 0 it would be marginal)
    PhysicalParams q = p;
    q.alpha2_in = 0.0;
    q.gamma12 = 1e-6;
    const SteadyState ss0 = solve(q);
    const Mat12 a0 = drift_matrix(q, ss0).A;
    worst = std::max(worst, std::abs(ss0.x(idx::s12)) / q.N);
    worst = std::max(worst, std::abs(a0(idx::s1m, idx::a2)));
    worst = std::max(worst, std::abs(a0(idx::s1p, idx::a2d)));
    worst = std::max(worst, std::abs(a0(idx::s2m, idx::a1)));
    worst = std::max(worst, std::abs(a0(idx::s2p, idx::a1d)));
    return make_result("drift-matrix-structure", worst, 1e-10);
}

CheckResult check_diffusion_structure() {
    const PhysicalParams p = fig_params("fig1a");
    PhysicalParams q = p;
    q.delta_L2 = 0.1;
    const SteadyState ss = solve(q);
    const DiffusionMatrix d = diffusion_matrix(q, ss);
    double worst = 0.0;

    // coherent inputs: vacuum form, only the <dA dA+>-ordered correlators
    // survive, magnitude gamma/tau (slots (a,a) in the conjugate-column
    // indexing)
    const double kappa = q.gamma / q.tau;
    worst = std::max(worst, std::abs(d.input(idx::a1, idx::a1) - kappa) / kappa);
    worst = std::max(worst, std::abs(d.input(idx::a2, idx::a2) - kappa) / kappa);
    for (int i = idx::a1; i <= idx::a2d; ++i)
        for (int j = idx::a1; j <= idx::a2d; ++j)
            if (!((i == idx::a1 && j == idx::a1) || (i == idx::a2 && j == idx::a2)))
                worst = std::max(worst, std::abs(d.input(i, j)) / kappa);

    // no decay, no noise: atomic block must vanish
    PhysicalParams z = q;
    z.Gamma1 = z.Gamma2 = z.gamma12 = 0.0;
    SteadyState fake;
    fake.x = ss.x;
    fake.residual = 0.0;
    const DiffusionMatrix dz = diffusion_matrix(z, fake);
    worst = std::max(worst, dz.atomic.cwiseAbs().maxCoeff() / (1.0 + q.N));
    return make_result("diffusion-structure", worst, 1e-13);
}

CheckResult check_einstein_identity() {
    std::mt19937_64 rng(17);
    const PhysicalParams p = fig_params("fig1a");
    double worst = 0.0;
    std::uniform_int_distribution<int> pick(idx::s1m, idx::w2);
    for (int k = 0; k < 50; ++k) {
        const Vec12 x = random_physical_state(rng, p.N, 600.0, 0.3);
        const Mat3 rho = rho_from_state(x, p.N);
        const cplx a1 = x(idx::a1), a2 = x(idx::a2);
        const LindbladGenerator gen = build_generator(p, a1, a2);
        const int mu = pick(rng), nu = pick(rng);
        const Mat3 sm = atomic_operator(mu), sn = atomic_operator(nu);
        const cplx lhs = (rho * gen.adjoint(sm * sn)).trace();
        const cplx rhs = (rho * (sm * gen.adjoint(sn) + gen.adjoint(sm) * sn)).trace() +
                         einstein_coefficient(p, a1, a2, rho, sm, sn);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return make_result("einstein-relation-identity", worst, 1e-10);
}

CheckResult check_einstein_two_level() {
    // closed two-level reduction: |2> empty and decoupled
    PhysicalParams p;
    p.Gamma1 = 1.0;
    p.Gamma2 = 0.0;
    p.g1 = 3e-4;
    p.g2 = 0.0;
    p.gamma = 0.1;
    p.tau = 1e-3;
    p.N = 500.0;
    p.alpha1_in = 2.0;

    // analytic optical Bloch steady state at Rabi = g a, resonance:
    // w = -1/(1+s), p0 = s/(2(1+s)) with s = 8 (g|a|)^2 / Gamma^2
    const cplx a1(240.0, 0.0);
    const double rabi = p.g1 * std::abs(a1);
    const double s_sat = 8.0 * rabi * rabi / (p.Gamma1 * p.Gamma1);
    const double pe = 0.5 * s_sat / (1.0 + s_sat);
    const double w = 2.0 * pe - 1.0;
    const cplx rho01 = kI * p.g1 * a1 * w / (p.Gamma1 / 2.0);  // <sigma_10>

    SteadyState ss;
    ss.x = Vec12::Zero();
    ss.x(idx::s1m) = p.N * rho01;
    ss.x(idx::s1p) = std::conj(ss.x(idx::s1m));
    ss.x(idx::w1) = p.N * w;
    ss.x(idx::w2) = p.N * pe;
    ss.x(idx::a1) = a1;
    ss.x(idx::a1d) = std::conj(a1);
    ss.residual = 0.0;

    const DiffusionMatrix d = diffusion_matrix(p, ss);
    const Mat3 rho = rho_from_state(ss.x, p.N);
    const double p0 = rho(0, 0).real();
    const cplx m = rho(0, 1);   // <sigma_10>
    const cplx pl = rho(1, 0);  // <sigma_01>

    double worst = 0.0;
    // D[mu,nu] = <F_mu F_P(nu)>; hand-derived bilinear decay-only table:
    //   <F_m F_p> = Gamma(p00 + p11), <F_m F_w> = 2 Gamma <sigma_10>,
    //   <F_w F_p> = 2 Gamma <sigma_01>, <F_w F_w> = 4 Gamma p0,
    //   all other pairs on the 1-0 transition vanish
    auto expect = [&](int i, int j_bilinear, cplx want) {
        const int j = kConjPair[j_bilinear];  // slot with F_{j_bilinear} in column
        worst = std::max(worst, std::abs(d.atomic(i, j) - p.N * want) / (1.0 + p.N));
    };
    expect(idx::s1m, idx::s1p, p.Gamma1 * (rho(0, 0) + rho(1, 1)));
    expect(idx::s1p, idx::s1m, 0.0);
    expect(idx::s1m, idx::s1m, 0.0);
    expect(idx::s1p, idx::s1p, 0.0);
    expect(idx::s1m, idx::w1, 2.0 * p.Gamma1 * m);
    expect(idx::w1, idx::s1m, 0.0);
    expect(idx::w1, idx::s1p, 2.0 * p.Gamma1 * pl);
    expect(idx::s1p, idx::w1, 0.0);
    expect(idx::w1, idx::w1, 4.0 * p.Gamma1 * p0);
    return make_result("einstein-two-level-oracle", worst, 1e-12);
}

CheckResult check_lyapunov_moments() {
    PhysicalParams p = fig_params("fig1a");
    p.delta_L2 = 0.15;
    const SteadyState ss = solve(p);
    const Mat12 a = drift_matrix(p, ss).A;
    const DiffusionMatrix d = diffusion_matrix(p, ss);

    // frozen fields: atomic sub-block dynamics against single-atom
    // quantum moments via the regression theorem,
    //   Sigma[mu,nu] = N (<s_mu s_P(nu)> - <s_mu><s_P(nu)>)
    using Mat8 = Eigen::Matrix<cplx, 8, 8>;
    Mat8 a_at = a.topLeftCorner<8, 8>();
    Mat8 d_at = d.atomic.topLeftCorner<8, 8>();
    const Mat8 sigma = solve_lyapunov_dagger(a_at, d_at);

    // oracle side: density matrix relaxed at the converged fields
    Mat3 rho0 = Mat3::Zero();
    rho0(1, 1) = 1.0;
    const Mat3 rho = integrate_density_matrix(p, ss.x(idx::a1), ss.x(idx::a2), rho0, 4000.0);

    double worst = 0.0;
    double scale = sigma.cwiseAbs().maxCoeff();
    for (int mu = 0; mu < 8; ++mu)
        for (int nu = 0; nu < 8; ++nu) {
            const Mat3 sm = atomic_operator(mu);
            const Mat3 sn = atomic_operator(kConjPair[nu]);
            const cplx mom = p.N * ((rho * sm * sn).trace() -
                                    (rho * sm).trace() * (rho * sn).trace());
            worst = std::max(worst, std::abs(sigma(mu, nu) - mom) / scale);
        }
    return make_result("lyapunov-vs-quantum-moments", worst, 1e-6,
                       "frozen-field atomic covariance, relative to max entry");
}

CheckResult check_empty_cavity_unitarity() {
    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    std::uniform_real_distribution<double> uw(0.05, 5.0);
    PhysicalParams p = fig_params("fig1a");
    p.g1 = p.g2 = 0.0;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        PhysicalParams q = p;
        q.Delta_c1 = ud(rng);
        q.Delta_c2 = ud(rng);
        const double omega = uw(rng);
        const SteadyState ss = solve(q);
        const DriftMatrix a = drift_matrix(q, ss);
        const DiffusionMatrix d = diffusion_matrix(q, ss);
        const SpectralMatrix s = spectral_matrix(a, d, omega);
        const SpectrumRecord r = correlation_record(s, q, ss, omega, d);
        for (const double v : {r.s_pump, r.s_probe, r.s_sum, r.s_diff})
            worst = std::max(worst, std::abs(v - 1.0));
    }
    return make_result("empty-cavity-unitarity", worst, 1e-10);
}

CheckResult check_ou_closed_form() {
    DriftMatrix a;
    a.A = Mat12::Zero();
    Eigen::Matrix<double, 12, 1> rates;
    for (int i = 0; i < 12; ++i) rates(i) = 0.3 + 0.25 * i;
    for (int i = 0; i < 12; ++i) a.A(i, i) = rates(i);
    DiffusionMatrix d;
    d.D_corr = Mat12::Identity();
    d.atomic = Mat12::Zero();
    d.input = Mat12::Identity();
    double worst = 0.0;
    for (const double w : {0.0, 0.7, 2.3}) {
        const SpectralMatrix s = spectral_matrix(a, d, w);
        for (int i = 0; i < 12; ++i) {
            const double want = 1.0 / (rates(i) * rates(i) + w * w);
            worst = std::max(worst, std::abs(s.S(i, i) - want) / want);
            for (int j = 0; j < 12; ++j)
                if (i != j) worst = std::max(worst, std::abs(s.S(i, j)));
        }
    }
    return make_result("ou-scalar-closed-form", worst, 1e-13);
}

CheckResult check_spectral_conjugation_symmetry() {
    PhysicalParams p = fig_params("fig1a");
    p.delta_L2 = 0.21;
    const SteadyState ss = solve(p);
    const DriftMatrix a = drift_matrix(p, ss);
    const DiffusionMatrix d = diffusion_matrix(p, ss);

    // quantum-ordered noise: P conj(S_D(w)) P = S_D'(-w) with D' the
    // conjugate-mirrored covariance (D' = D only for classical noise);
    // S itself is hermitian positive at every frequency, and measured
    // (+-w symmetrized) observables are even in w
    DiffusionMatrix dm = d;
    dm.D_corr = conj_permuted(d.D_corr);
    double worst = 0.0;
    for (const double w : {0.05305164769729845, 0.4, 1.7}) {
        const SpectralMatrix sp = spectral_matrix(a, d, w);
        const SpectralMatrix sm = spectral_matrix(a, dm, -w);
        const double scale = sm.S.cwiseAbs().maxCoeff();
        worst = std::max(worst,
                         (conj_permuted(sp.S) - sm.S).cwiseAbs().maxCoeff() / (1.0 + scale));
        worst = std::max(worst, (sp.S - sp.S.adjoint().eval()).cwiseAbs().maxCoeff() /
                                    (1.0 + sp.S.cwiseAbs().maxCoeff()));
        Eigen::SelfAdjointEigenSolver<Mat12> es(0.5 * (sp.S + sp.S.adjoint().eval()));
        if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + sp.S.cwiseAbs().maxCoeff()))
            worst = std::max(worst, 1.0);

        const SpectrumRecord rp = correlation_record(sp, p, ss, w, d);
        const SpectralMatrix sn = spectral_matrix(a, d, -w);
        const SpectrumRecord rn = correlation_record(sn, p, ss, -w, d);
        worst = std::max(worst, std::abs(rp.s_probe - rn.s_probe));
        worst = std::max(worst, std::abs(rp.correlation_norm - rn.correlation_norm));
    }
    return make_result("spectral-conjugation-symmetry", worst, 1e-12);
}

CheckResult check_fig1a_lyapunov_identity() {
    PhysicalParams p = fig_params("fig1a");
    p.delta_L2 = 0.0;
    const SteadyState ss = solve(p);
    const DriftMatrix a = drift_matrix(p, ss);
    const DiffusionMatrix d = diffusion_matrix(p, ss);
    return check_lyapunov_identity(a.A, d.D_corr);
}

CheckResult check_correlation_coherence_link() {
    const RunConfig cfg = load_config("fig1b");
    const PhysicalParams p = nondimensionalize(cfg.params);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(-2.0 + 0.2 * i);

    ScanOptions zero_opts;
    zero_opts.force_zero_coherence = true;
    const std::vector<SpectrumRecord> zeroed = scan(p, grid, cfg.omega, zero_opts);
    double worst_zero = 0.0;
    for (const SpectrumRecord& r : zeroed)
        worst_zero = std::max({worst_zero, std::abs(r.correlation_norm),
                               std::abs(r.correlation_2C)});

    const std::vector<SpectrumRecord> normal = scan(p, grid, cfg.omega, {});
    double peak = 0.0;
    for (const SpectrumRecord& r : normal) peak = std::max(peak, std::abs(r.correlation_norm));

    double worst = worst_zero / 1e-10;  // scaled so tol = 1
    if (peak <= 1e-3) worst = std::max(worst, 2.0);
    std::ostringstream det;
    det << "forced-zero max |corr| = " << worst_zero << ", unmodified peak = " << peak;
    return {"correlation-coherence-link", worst < 1.0, worst_zero, 1e-10, det.str()};
}

CheckResult check_input_noise_filter() {
    PhysicalParams p = fig_params("fig1a");
    p.g1 = p.g2 = 0.0;
    p.fano1_in = 4.0;
    p.Delta_c1 = 0.07;  // detuned: amplitude/phase conversion is nontrivial
    p.alpha1_in = cplx(1.2, 0.8);

    const SteadyState ss = solve(p);
    const DriftMatrix a = drift_matrix(p, ss);
    const DiffusionMatrix d = diffusion_matrix(p, ss);

    double worst = 0.0;
    const double s2 = (p.fano1_in - 1.0) / 4.0;
    const double phi_in = std::arg(p.alpha1_in);
    const cplx t0 = (p.gamma / 2.0 - kI * p.Delta_c1) / (p.gamma / 2.0 + kI * p.Delta_c1);
    const double phi_out = phi_in + std::arg(t0);
    auto t_of = [&](double w) {
        return (p.gamma / 2.0 - kI * (p.Delta_c1 - w)) / (p.gamma / 2.0 + kI * (p.Delta_c1 - w));
    };
    for (const double w : {0.01, 0.03, 0.1, 0.5}) {
        const SpectralMatrix s = spectral_matrix(a, d, w);
        const SpectrumRecord r = output_spectra(s, p, ss, w, d);
        const cplx tb = std::conj(t_of(-w));
        const cplx c = std::polar(1.0, -phi_out) * t_of(w) * std::polar(1.0, phi_in) +
                       std::polar(1.0, phi_out) * tb * std::polar(1.0, -phi_in);
        const double want = 1.0 + s2 * std::norm(c);
        worst = std::max(worst, std::abs(r.s_pump - want) / want);
    }
    return make_result("input-noise-cavity-filter", worst, 1e-10);
}

CheckResult check_scan_symmetry() {
    const RunConfig cfg = load_config("fig1a");
    const PhysicalParams p = nondimensionalize(cfg.params);
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(-1.5 + 0.25 * i);
    const std::vector<SpectrumRecord> recs = scan(p, grid, cfg.omega, {});
    double worst = 0.0;
    const int n = static_cast<int>(grid.size());
    for (int i = 0; i < n / 2; ++i) {
        const double a = recs[i].fano_probe, b = recs[n - 1 - i].fano_probe;
        worst = std::max(worst, std::abs(a - b) / (std::abs(b) + 1.0));
    }
    return make_result("scan-detuning-symmetry", worst, 1e-8);
}

CheckResult check_balanced_splitting() {
    PhysicalParams p = fig_params("fig1b");
    p.delta_L2 = 0.05;
    const SteadyState ss = solve(p);
    const DriftMatrix a = drift_matrix(p, ss);
    const DiffusionMatrix d = diffusion_matrix(p, ss);
    const SpectralMatrix s = spectral_matrix(a, d, fig_omega("fig1b"));
    const SpectrumRecord r = correlation_record(s, p, ss, s.omega, d);
    const double p1 = std::norm(output_amplitude(p, ss, 1));
    const double p2 = std::norm(output_amplitude(p, ss, 2));
    const double want = 2.0 * (p1 * r.s_pump + p2 * r.s_probe) / (p1 + p2);
    double worst = std::abs(r.s_sum + r.s_diff - want);
    worst = std::max(worst,
                     std::abs(r.correlation_norm - (r.s_sum - r.s_diff) / 4.0));
    return make_result("balanced-splitting-identity", worst, 1e-12,
                       "s_sum + s_diff = 2(power-weighted s_pump, s_probe)");
}

// ------------------------------------------------------------- full tier

CheckResult check_trajectory_ou() {
    Eigen::MatrixXcd a(1, 1), b(1, 1);
    a(0, 0) = 1.0;
    b(0, 0) = 1.0;
    TrajectoryConfig cfg;
    cfg.dt = 0.05;
    cfg.n_steps = 1 << 14;
    cfg.n_trajectories = 2000;
    cfg.seed = 20250901;
    cfg.noise_factorization = b;
    cfg.burn_in_steps = 400;
    const std::vector<double> omegas = {0.0, 1.0, 3.0};
    const auto psd = simulate_psd(a, cfg, omegas);
    double worst = 0.0;
    for (size_t j = 0; j < omegas.size(); ++j) {
        const double want = 1.0 / (1.0 + omegas[j] * omegas[j]);
        worst = std::max(worst, std::abs(psd[j](0, 0).real() - want) / want);
    }
    return make_result("trajectory-ou-psd", worst, 0.05);
}

CheckResult check_trajectory_full_system() {
    PhysicalParams p = fig_params("fig1a");
    p.delta_L2 = 0.1;
    const SteadyState ss = solve(p);
    const DriftMatrix a = drift_matrix(p, ss);
    const DiffusionMatrix d = diffusion_matrix(p, ss);
    const PsdSurrogate sur = make_psd_surrogate(d.D_corr);

    Eigen::ComplexEigenSolver<Mat12> es(a.A, false);
    const double eig_max = es.eigenvalues().cwiseAbs().maxCoeff();
    const double eig_min = es.eigenvalues().real().minCoeff();

    TrajectoryConfig cfg;
    cfg.dt = std::min(0.02, 0.05 / eig_max);
    cfg.n_steps = 1 << 14;
    cfg.n_trajectories = 2000;
    cfg.seed = 777;
    cfg.noise_factorization = sur.B;
    cfg.burn_in_steps = std::min(40000, static_cast<int>(8.0 / (eig_min * cfg.dt)));

    std::vector<double> omegas;
    for (int k = 0; k < 10; ++k) omegas.push_back(0.08 + 0.12 * k);

    const auto psd = simulate_psd(a.A, cfg, omegas);
    DiffusionMatrix dtest;
    dtest.D_corr = sur.D_test;
    double worst = 0.0;
    for (size_t j = 0; j < omegas.size(); ++j) {
        const SpectralMatrix s = spectral_matrix(a, dtest, omegas[j]);
        worst = std::max(worst, (psd[j] - s.S).norm() / s.S.norm());
    }
    return make_result("trajectory-full-system-psd", worst, 0.05,
                       "Frobenius-relative at 10 frequencies");
}

CheckResult check_fixed_point_vs_integration() {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    int tested = 0;
    for (int k = 0; k < 40 && tested < 20; ++k) {
        PhysicalParams p = fig_params("fig1a");
        p.delta_L1 = 0.0;
        p.delta_L2 = 5.0 * u(rng);
        p.Delta_c1 = 0.3 * u(rng);
        p.Delta_c2 = 0.3 * u(rng);
        p.alpha1_in = cplx(0.5 + 3.0 * u01(rng), 0.0);
        p.alpha2_in = cplx(0.5 + 3.0 * u01(rng), 0.0);

        SteadyState ss;
        try {
            ss = solve(p);
        } catch (const std::exception&) {
            continue;
        }
        if (!ss.stable) continue;

        Vec12 x = empty_cavity_state(p, 1.0);
        bool settled = false;
        for (int chunk = 0; chunk < 20; ++chunk) {
            x = integrate_ode([&](double, const Vec12& y) { return drift(p, y); }, x, 0.0,
                              500.0, 1e-11, 1e-11);
            x = enforce_pairing(x);
            Vec12 f = drift(p, x);
            double fmag = 0.0;
            for (int i = 0; i < 12; ++i)
                fmag = std::max(fmag,
                                std::abs(f(i)) / (i <= idx::w2 ? p.N : 1.0));
            if (fmag < 1e-9) {
                settled = true;
                break;
            }
        }
        if (!settled) continue;
        ++tested;
        const NewtonResult polish = newton_refine(p, x);
        for (int i = 0; i < 12; ++i) {
            const double scale = i <= idx::w2 ? p.N : 1.0;
            worst = std::max(worst, std::abs(polish.x(i) - ss.x(i)) / scale);
        }
    }
    std::ostringstream det;
    det << tested << " parameter draws";
    return make_result("fixed-point-vs-time-integration", worst, 1e-8, det.str());
}

CheckResult check_continuation_determinism() {
    const RunConfig cfg = load_config("fig1a");
    const PhysicalParams p = nondimensionalize(cfg.params);
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(-2.0 + 0.25 * i);
    const auto run1 = continuation_scan(p, grid);
    const auto run2 = continuation_scan(p, grid);
    double worst = 0.0;
    for (size_t i = 0; i < run1.size(); ++i) {
        for (int j = 0; j < 12; ++j) {
            if (run1[i].x(j) != run2[i].x(j)) worst = 1.0;
        }
        if (run1[i].residual != run2[i].residual) worst = 1.0;
    }
    return make_result("continuation-determinism", worst, 0.5, "bit-identical reruns");
}

}  // namespace

CheckResult check_lyapunov_identity(const Mat12& a, const Mat12& d, bool corrupt_drift_sign) {
    try {
        Mat12 a_spec = a;
        if (corrupt_drift_sign) {
            for (int i = 0; i < 12; ++i)
                for (int j = 0; j < 12; ++j)
                    if (i != j) a_spec(i, j) = -a_spec(i, j);
        }
        DriftMatrix am;
        am.A = a_spec;
        DiffusionMatrix dm;
        dm.D_corr = d;
        const Mat12 integral = integrate_spectral_matrix(am, dm);
        const Mat12 sigma = solve_lyapunov_dagger(a, d);
        const double rel = (integral - sigma).norm() / sigma.norm();
        return make_result("lyapunov-integral-identity", rel, 1e-6);
    } catch (const std::exception& e) {
        return {"lyapunov-integral-identity", false, 1.0, 1e-6,
                std::string("exception: ") + e.what()};
    }
}

std::vector<CheckResult> run_validation(ValidationLevel level) {
    std::vector<CheckResult> out;
    out.push_back(check_params_roundtrip());
    out.push_back(check_generator_trace_preservation());
    out.push_back(check_generator_hermiticity());
    out.push_back(check_drift_conjugation_symmetry());
    out.push_back(check_drift_oracle_match());
    out.push_back(check_decoupling_at_zero_coupling());
    out.push_back(check_jacobian_fd());
    out.push_back(check_steady_state_contract());
    out.push_back(check_dark_state());
    out.push_back(check_eit_transmission());
    out.push_back(check_drift_matrix_structure());
    out.push_back(check_diffusion_structure());
    out.push_back(check_einstein_identity());
    out.push_back(check_einstein_two_level());
    out.push_back(check_lyapunov_moments());
    out.push_back(check_empty_cavity_unitarity());
    out.push_back(check_ou_closed_form());
    out.push_back(check_spectral_conjugation_symmetry());
    out.push_back(check_fig1a_lyapunov_identity());
    out.push_back(check_correlation_coherence_link());
    out.push_back(check_input_noise_filter());
    out.push_back(check_scan_symmetry());
    out.push_back(check_balanced_splitting());
    if (level == ValidationLevel::full) {
        out.push_back(check_trajectory_ou());
        out.push_back(check_trajectory_full_system());
        out.push_back(check_fixed_point_vs_integration());
        out.push_back(check_continuation_determinism());
    }
    return out;
}

int print_report(const std::vector<CheckResult>& results, std::ostream& os) {
    int failures = 0;
    for (const CheckResult& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34) << r.name
           << " measured " << std::scientific << std::setprecision(3) << r.measured
           << "  tol " << r.tolerance;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << '\n';
        if (!r.pass) ++failures;
    }
    os << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
       << '\n';
    return failures;
}

}  // namespace eit
