#pragma once

#include <complex>

namespace eit {

// Physical parameters of the two-mode ring cavity + N three-level atoms
// model. Rates and detunings are angular frequencies; any consistent unit
// system is accepted. Solvers nondimensionalize to Gamma = Gamma1 + Gamma2
// = 1 internally (see nondimensionalize).
//
// Conventions:
//   delta_Lk = (laser k frequency) - (atomic transition k frequency)
//   Delta_ck = cavity detuning seen by field k
//   alpha_k_in in sqrt(photons / unit time); |alpha|^2 is the input flux.
struct PhysicalParams {
    double g1 = 0.0;       // atom-field coupling, |1><->|0| transition
    double g2 = 0.0;       // atom-field coupling, |2><->|0| transition
    double Gamma1 = 0.5;   // spontaneous emission rate |0> -> |1>
    double Gamma2 = 0.5;   // spontaneous emission rate |0> -> |2>
    double gamma12 = 0.0;  // ground-state decoherence rate (dephasing)
    double gamma = 0.1;    // cavity linewidth (energy decay rate)
    double tau = 1e-3;     // cavity round-trip time
    double Delta_c1 = 0.0;
    double Delta_c2 = 0.0;
    double delta_L1 = 0.0;
    double delta_L2 = 0.0;
    double N = 1e4;  // number of atoms
    std::complex<double> alpha1_in{0.0, 0.0};
    std::complex<double> alpha2_in{0.0, 0.0};
    double fano1_in = 1.0;  // input intensity noise / shot noise, >= 1
    double fano2_in = 1.0;

    double gamma_total() const { return Gamma1 + Gamma2; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Rescales all rates and detunings to units of Gamma = Gamma1 + Gamma2,
// tau to tau*Gamma, and field amplitudes by 1/sqrt(Gamma) (couplings g by
// the same factor, so g*alpha stays a rate). Throws ZeroTotalDecay when
// Gamma1 + Gamma2 == 0.
PhysicalParams nondimensionalize(const PhysicalParams& p);

// Inverse of nondimensionalize given the original total decay rate;
// redimensionalize(nondimensionalize(p), p.gamma_total()) == p.
PhysicalParams redimensionalize(const PhysicalParams& p, double gamma_total);

}  // namespace eit
