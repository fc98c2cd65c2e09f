#include "eit/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "eit/errors.hpp"

namespace eit {

namespace {
void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw std::invalid_argument("PhysicalParams." + field + ": " + what);
}
}  // namespace

void PhysicalParams::validate() const {
    require(std::isfinite(g1) && g1 >= 0.0, "g1", "must be finite and >= 0");
    require(std::isfinite(g2) && g2 >= 0.0, "g2", "must be finite and >= 0");
    require(std::isfinite(Gamma1) && Gamma1 >= 0.0, "Gamma1", "must be finite and >= 0");
    require(std::isfinite(Gamma2) && Gamma2 >= 0.0, "Gamma2", "must be finite and >= 0");
    require(Gamma1 + Gamma2 > 0.0, "Gamma1+Gamma2", "total decay must be > 0");
    require(std::isfinite(gamma12) && gamma12 >= 0.0, "gamma12", "must be finite and >= 0");
    require(std::isfinite(gamma) && gamma > 0.0, "gamma", "must be finite and > 0");
    require(std::isfinite(tau) && tau > 0.0, "tau", "must be finite and > 0");
    require(std::isfinite(Delta_c1), "Delta_c1", "must be finite");
    require(std::isfinite(Delta_c2), "Delta_c2", "must be finite");
    require(std::isfinite(delta_L1), "delta_L1", "must be finite");
    require(std::isfinite(delta_L2), "delta_L2", "must be finite");
    require(std::isfinite(N) && N >= 1.0, "N", "must be finite and >= 1");
    require(std::isfinite(alpha1_in.real()) && std::isfinite(alpha1_in.imag()), "alpha1_in",
            "must be finite");
    require(std::isfinite(alpha2_in.real()) && std::isfinite(alpha2_in.imag()), "alpha2_in",
            "must be finite");
    require(std::isfinite(fano1_in) && fano1_in >= 1.0, "fano1_in", "must be >= 1");
    require(std::isfinite(fano2_in) && fano2_in >= 1.0, "fano2_in", "must be >= 1");
}

PhysicalParams nondimensionalize(const PhysicalParams& p) {
    const double G = p.gamma_total();
    if (G == 0.0) throw ZeroTotalDecay("nondimensionalize: Gamma1 + Gamma2 == 0");
    const double sG = std::sqrt(G);
    PhysicalParams q = p;
    q.g1 = p.g1 / sG;  // g*alpha must remain a rate: g and alpha both scale by 1/sqrt(G)
    q.g2 = p.g2 / sG;
    q.Gamma1 = p.Gamma1 / G;
    q.Gamma2 = p.Gamma2 / G;
    q.gamma12 = p.gamma12 / G;
    q.gamma = p.gamma / G;
    q.tau = p.tau * G;
    q.Delta_c1 = p.Delta_c1 / G;
    q.Delta_c2 = p.Delta_c2 / G;
    q.delta_L1 = p.delta_L1 / G;
    q.delta_L2 = p.delta_L2 / G;
    q.alpha1_in = p.alpha1_in / sG;
    q.alpha2_in = p.alpha2_in / sG;
    return q;
}

PhysicalParams redimensionalize(const PhysicalParams& p, double gamma_total) {
    if (gamma_total <= 0.0)
        throw ZeroTotalDecay("redimensionalize: target total decay must be > 0");
    const double G = gamma_total;
    const double sG = std::sqrt(G);
    PhysicalParams q = p;
    q.g1 = p.g1 * sG;
    q.g2 = p.g2 * sG;
    q.Gamma1 = p.Gamma1 * G;
    q.Gamma2 = p.Gamma2 * G;
    q.gamma12 = p.gamma12 * G;
    q.gamma = p.gamma * G;
    q.tau = p.tau / G;
    q.Delta_c1 = p.Delta_c1 * G;
    q.Delta_c2 = p.Delta_c2 * G;
    q.delta_L1 = p.delta_L1 * G;
    q.delta_L2 = p.delta_L2 * G;
    q.alpha1_in = p.alpha1_in * sG;
    q.alpha2_in = p.alpha2_in * sG;
    return q;
}

}  // namespace eit
