#include "eit/spectra.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "eit/errors.hpp"

namespace eit {

namespace {

const cplx kI(0.0, 1.0);

using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat12x4 = Eigen::Matrix<cplx, 12, 4>;

void require_stable(const Mat12& a, const char* who) {
    // marginal (exactly zero) modes pass; growing modes do not. The
    // condition-number guard below still rejects omega on an undamped
    // resonance.
    Eigen::ComplexEigenSolver<Mat12> es(a, false);
    if (es.eigenvalues().real().minCoeff() < -1e-12)
        throw std::invalid_argument(std::string(who) + ": drift matrix has a growing mode");
}

// Covariance of the input-field fluctuation vector
// (dA1in, dA1in+, dA2in, dA2in+): vacuum plus classical excess noise.
Mat4 input_noise_covariance(const PhysicalParams& p) {
    Mat4 dv = Mat4::Zero();
    auto fill = [&](int i, double fano, cplx alpha_in) {
        const double s2 = (fano - 1.0) / 4.0;
        const double phi = std::abs(alpha_in) > 0.0 ? std::arg(alpha_in) : 0.0;
        const cplx e2 = std::polar(1.0, 2.0 * phi);
        dv(i, i + 1) = 1.0 + s2;
        dv(i + 1, i) = s2;
        dv(i, i) = s2 * e2;
        dv(i + 1, i + 1) = s2 * std::conj(e2);
    };
    fill(0, p.fano1_in, p.alpha1_in);
    fill(2, p.fano2_in, p.alpha2_in);
    return dv;
}

// Input noises enter the Langevin forces through sqrt(gamma/tau).
Mat12x4 input_coupling(const PhysicalParams& p) {
    Mat12x4 b = Mat12x4::Zero();
    const double kin = std::sqrt(p.gamma / p.tau);
    b(idx::a1, 0) = kin;
    b(idx::a1d, 1) = kin;
    b(idx::a2, 2) = kin;
    b(idx::a2d, 3) = kin;
    return b;
}

// One output observable dY = cx . dx + cv . v_in in the frequency domain.
struct Contraction {
    Vec12 cx = Vec12::Zero();
    Vec4 cv = Vec4::Zero();
};

// Amplitude quadrature of output field k, normalized to unit shot noise.
Contraction quadrature(const PhysicalParams& p, cplx a_out, int field) {
    const double phi = std::arg(a_out);
    const cplx em = std::polar(1.0, -phi);
    const cplx ep = std::polar(1.0, phi);
    const double kout = std::sqrt(p.gamma * p.tau);
    Contraction c;
    if (field == 1) {
        c.cx(idx::a1) = kout * em;
        c.cx(idx::a1d) = kout * ep;
        c.cv(0) = -em;
        c.cv(1) = -ep;
    } else {
        c.cx(idx::a2) = kout * em;
        c.cx(idx::a2d) = kout * ep;
        c.cv(2) = -em;
        c.cv(3) = -ep;
    }
    return c;
}

// Spectral density <Y1(w) Y2(-w)> for the linear system
// dx = R(w) (F_at + B v), with <F F^T> = D and <v v^T> = Dv:
//   cx1 R(w) D R(-w)^T cx2 + cx1 R(w) B Dv cv2
//   + cv1 Dv B^T R(-w)^T cx2 + cv1 Dv cv2.
cplx cross_density(const Contraction& y1, const Contraction& y2, const Mat12& r,
                   const Mat12& r_neg, const Mat12& d, const Mat12x4& b, const Mat4& dv) {
    const Vec12 left = r.transpose() * y1.cx;       // cx1^T R(w) as a column
    const Vec12 right = r_neg.transpose() * y2.cx;  // R(-w)^T cx2
    cplx val = (left.transpose() * (d * right))(0, 0);
    val += (left.transpose() * (b * (dv * y2.cv)))(0, 0);
    val += (y1.cv.transpose() * (dv * (b.transpose() * right)))(0, 0);
    val += (y1.cv.transpose() * (dv * y2.cv))(0, 0);
    return val;
}

// Symmetrized over +-omega: the measured photocurrent spectrum.
cplx sym_density(const Contraction& y1, const Contraction& y2, const SpectralMatrix& s,
                 const Mat12& d, const Mat12x4& b, const Mat4& dv) {
    const cplx plus = cross_density(y1, y2, s.resolvent_minus, s.resolvent_plus, d, b, dv);
    const cplx minus = cross_density(y1, y2, s.resolvent_plus, s.resolvent_minus, d, b, dv);
    return 0.5 * (plus + minus);
}

struct OutputObservables {
    double s1, s2, cross, p1, p2;
};

OutputObservables observables(const SpectralMatrix& s, const PhysicalParams& p,
                              const SteadyState& ss, const DiffusionMatrix& d,
                              bool need_cross) {
    const cplx a1_out = output_amplitude(p, ss, 1);
    const cplx a2_out = output_amplitude(p, ss, 2);
    if (std::abs(a1_out) < 1e-12)
        throw ZeroOutputField("output field 1 is dark; quadrature phase undefined");
    if (std::abs(a2_out) < 1e-12)
        throw ZeroOutputField("output field 2 is dark; quadrature phase undefined");

    const Mat4 dv = input_noise_covariance(p);
    const Mat12x4 b = input_coupling(p);
    const Contraction x1 = quadrature(p, a1_out, 1);
    const Contraction x2 = quadrature(p, a2_out, 2);
    const Mat12 d_bil = to_bilinear(d.D_corr);  // <F F^T>-ordered

    OutputObservables out;
    out.s1 = sym_density(x1, x1, s, d_bil, b, dv).real();
    out.s2 = sym_density(x2, x2, s, d_bil, b, dv).real();
    out.cross = need_cross ? sym_density(x1, x2, s, d_bil, b, dv).real() : 0.0;
    out.p1 = std::norm(a1_out);
    out.p2 = std::norm(a2_out);
    return out;
}

SpectrumRecord assemble_record(const PhysicalParams& p, const OutputObservables& o,
                               double omega, bool with_correlations) {
    SpectrumRecord rec;
    rec.delta_L2 = p.delta_L2;
    rec.omega = omega;
    rec.s_pump = o.s1;
    rec.s_probe = o.s2;
    rec.fano_pump = o.s1;  // bright-field limit: Fano = amplitude-quadrature noise
    rec.fano_probe = o.s2;
    if (with_correlations) {
        const double ptot = o.p1 + o.p2;
        const double geo = std::sqrt(o.p1 * o.p2);
        rec.s_sum = (o.p1 * o.s1 + o.p2 * o.s2 + 2.0 * geo * o.cross) / ptot;
        rec.s_diff = (o.p1 * o.s1 + o.p2 * o.s2 - 2.0 * geo * o.cross) / ptot;
        rec.correlation_2C = 4.0 * geo * o.cross;
        rec.correlation_norm = (rec.s_sum - rec.s_diff) / 4.0;
    }
    return rec;
}

}  // namespace

cplx output_amplitude(const PhysicalParams& p, const SteadyState& ss, int field) {
    const double kout = std::sqrt(p.gamma * p.tau);
    if (field == 1) return kout * ss.x(idx::a1) - p.alpha1_in;
    return kout * ss.x(idx::a2) - p.alpha2_in;
}

SpectralMatrix spectral_matrix(const DriftMatrix& a, const DiffusionMatrix& d, double omega) {
    require_stable(a.A, "spectral_matrix");

    const Mat12 am = a.A - kI * omega * Mat12::Identity();
    const Mat12 ap = a.A + kI * omega * Mat12::Identity();
    {
        Eigen::JacobiSVD<Mat12> svd(am);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        if (smin <= 0.0 || smax / smin > 1e14)
            throw SingularResolvent("spectral_matrix: (A - i omega I) numerically singular at omega = " +
                                    std::to_string(omega));
    }

    SpectralMatrix out;
    out.omega = omega;
    out.resolvent_minus = am.partialPivLu().solve(Mat12::Identity());
    out.resolvent_plus = ap.partialPivLu().solve(Mat12::Identity());
    // (A^+ + i w I)^{-1} = R(w)^+
    out.S = out.resolvent_minus * d.D_corr * out.resolvent_minus.adjoint();
    return out;
}

SpectrumRecord output_spectra(const SpectralMatrix& s, const PhysicalParams& p,
                              const SteadyState& ss, double omega, const DiffusionMatrix& d) {
    return assemble_record(p, observables(s, p, ss, d, false), omega, false);
}

SpectrumRecord correlation_record(const SpectralMatrix& s, const PhysicalParams& p,
                                  const SteadyState& ss, double omega,
                                  const DiffusionMatrix& d) {
    return assemble_record(p, observables(s, p, ss, d, true), omega, true);
}

PointResult scan_point(const PhysicalParams& p, const SteadyState& ss, double omega,
                       bool force_zero_coherence) {
    PointResult out;
    if (force_zero_coherence) {
        SteadyState zeroed = ss;
        zeroed.x(idx::s12) = 0.0;
        zeroed.x(idx::s12p) = 0.0;
        out.A = drift_matrix(p, zeroed);
        out.D = diffusion_matrix(p, zeroed);
        decouple_transitions(out.A.A, out.D.D_corr);
    } else {
        out.A = drift_matrix(p, ss);
        out.D = diffusion_matrix(p, ss);
    }
    const SpectralMatrix s = spectral_matrix(out.A, out.D, omega);
    out.record = correlation_record(s, p, ss, omega, out.D);
    return out;
}

std::vector<SpectrumRecord> scan(const PhysicalParams& p, const std::vector<double>& delta_L2_grid,
                                 double omega, const ScanOptions& opts) {
    const std::vector<SteadyState> states = continuation_scan(p, delta_L2_grid, opts.solver);

    std::vector<SpectrumRecord> records(states.size());
    std::exception_ptr first_error;
    int first_error_index = -1;

    auto work = [&](size_t i) {
        PhysicalParams pi = p;
        pi.delta_L2 = delta_L2_grid[i];
        records[i] = scan_point(pi, states[i], omega, opts.force_zero_coherence).record;
    };

    const int n_threads = std::max(1, opts.n_threads);
    if (n_threads == 1) {
        for (size_t i = 0; i < states.size(); ++i) {
            try {
                work(i);
            } catch (const std::exception& e) {
                throw ScanError(static_cast<int>(i), e.what());
            }
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        std::mutex err_mutex;
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < states.size(); i = next.fetch_add(1)) {
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (first_error_index < 0 ||
                            static_cast<int>(i) < first_error_index) {
                            first_error = std::current_exception();
                            first_error_index = static_cast<int>(i);
                        }
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) {
            try {
                std::rethrow_exception(first_error);
            } catch (const std::exception& e) {
                throw ScanError(first_error_index, e.what());
            }
        }
    }
    return records;
}

Mat12 integrate_spectral_matrix(const DriftMatrix& a, const DiffusionMatrix& d) {
    Eigen::ComplexEigenSolver<Mat12> es(a.A, false);
    const double min_re = es.eigenvalues().real().minCoeff();
    if (min_re <= 0.0)
        throw std::invalid_argument("integrate_spectral_matrix: drift matrix is not stable");

    auto eval = [&](double w) -> Mat12 {
        const Mat12 am = a.A - kI * w * Mat12::Identity();
        const Mat12 r = am.partialPivLu().solve(Mat12::Identity());
        return r * d.D_corr * r.adjoint();
    };

    const double w_max = 60.0 * es.eigenvalues().cwiseAbs().maxCoeff();

    // adaptive Simpson with Frobenius-norm error control
    std::function<Mat12(double, double, const Mat12&, const Mat12&, const Mat12&, double, int)>
        simpson = [&](double lo, double hi, const Mat12& flo, const Mat12& fmid,
                      const Mat12& fhi, double tol, int depth) -> Mat12 {
        const double mid = 0.5 * (lo + hi);
        const double lq = 0.5 * (lo + mid), rq = 0.5 * (mid + hi);
        const Mat12 flq = eval(lq), frq = eval(rq);
        const Mat12 whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        const Mat12 left = (mid - lo) / 6.0 * (flo + 4.0 * flq + fmid);
        const Mat12 right = (hi - mid) / 6.0 * (fmid + 4.0 * frq + fhi);
        const Mat12 refined = left + right;
        if (depth >= 28 || (refined - whole).norm() < 15.0 * tol)
            return refined + (refined - whole) / 15.0;
        return simpson(lo, mid, flo, flq, fmid, tol / 2.0, depth + 1) +
               simpson(mid, hi, fmid, frq, fhi, tol / 2.0, depth + 1);
    };

    // absolute tolerance ~ 1e-9 of the expected integral magnitude 2pi*Sigma
    const double tol = 1e-9 * d.D_corr.norm() / min_re;
    const Mat12 f_lo = eval(-w_max), f_mid = eval(0.0), f_hi = eval(w_max);
    Mat12 integral = simpson(-w_max, w_max, f_lo, f_mid, f_hi, tol, 0);

    // analytic tails: S = D/w^2 + i(DA^+ - AD)/w^3 + (ADA^+ - A^2 D - D A^+2)/w^4 + ...
    // the odd term cancels over the symmetric pair of tails
    const Mat12& dc = d.D_corr;
    const Mat12 t2 = dc * (2.0 / w_max);
    const Mat12 t4 = (a.A * dc * a.A.adjoint() - a.A * a.A * dc - dc * a.A.adjoint() * a.A.adjoint()) *
                     (2.0 / (3.0 * w_max * w_max * w_max));
    integral += t2 + t4;

    return integral / (2.0 * M_PI);
}

}  // namespace eit
