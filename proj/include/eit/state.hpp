#pragma once

#include <Eigen/Dense>
#include <complex>

namespace eit {

using cplx = std::complex<double>;
using Vec12 = Eigen::Matrix<cplx, 12, 1>;
using Mat12 = Eigen::Matrix<cplx, 12, 12>;
using Mat3 = Eigen::Matrix<cplx, 3, 3>;

// Component ordering of the 12-variable mean-field state. Atomic entries
// are collective (sums over the N atoms), field entries are intracavity
// amplitudes in photon-flux normalization (|a|^2 = circulating photons
// per unit time, [A, A+] = 1/tau).
//
// Level labels: |0> excited, |1> and |2> the two ground states.
// S1m = sum_i |1><0|_i,  S2m = sum_i |2><0|_i,  S12 = sum_i |2><1|_i,
// W1  = sum_i (|0><0| - |1><1|)_i,  W2 analogously for level 2.
namespace idx {
inline constexpr int s1m = 0;   // <S1->  polarization, pump transition
inline constexpr int s1p = 1;   // <S1+>
inline constexpr int s2m = 2;   // <S2->  polarization, probe transition
inline constexpr int s2p = 3;   // <S2+>
inline constexpr int s12 = 4;   // <S12>  ground-state coherence
inline constexpr int s12p = 5;  // <S12+>
inline constexpr int w1 = 6;    // <W1>   inversion, pump transition (real)
inline constexpr int w2 = 7;    // <W2>   inversion, probe transition (real)
inline constexpr int a1 = 8;    // <A1>   pump field
inline constexpr int a1d = 9;   // <A1+>
inline constexpr int a2 = 10;   // <A2>   probe field
inline constexpr int a2d = 11;  // <A2+>
}  // namespace idx

using StateVector = Vec12;

// Index permutation pairing each component with its hermitian conjugate
// partner (w1, w2 are self-paired). P is an involution.
inline constexpr int kConjPair[12] = {1, 0, 3, 2, 5, 4, 6, 7, 9, 8, 11, 10};

// Applies P . conj(x): the image of a state under hermitian conjugation.
// Physical states are fixed points of this map.
inline Vec12 conj_permuted(const Vec12& x) {
    Vec12 y;
    for (int i = 0; i < 12; ++i) y(i) = std::conj(x(kConjPair[i]));
    return y;
}

// P . conj(M) . P for 12x12 matrices (conjugation symmetry of drift and
// diffusion matrices).
inline Mat12 conj_permuted(const Mat12& m) {
    Mat12 out;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) out(i, j) = std::conj(m(kConjPair[i], kConjPair[j]));
    return out;
}

// Enforces the conjugate pairing exactly (projects onto the physical
// manifold). Used by solvers when lifting reduced real iterates.
inline Vec12 enforce_pairing(const Vec12& x) {
    Vec12 y = x;
    y(idx::s1p) = std::conj(y(idx::s1m));
    y(idx::s2p) = std::conj(y(idx::s2m));
    y(idx::s12p) = std::conj(y(idx::s12));
    y(idx::w1) = cplx(y(idx::w1).real(), 0.0);
    y(idx::w2) = cplx(y(idx::w2).real(), 0.0);
    y(idx::a1d) = std::conj(y(idx::a1));
    y(idx::a2d) = std::conj(y(idx::a2));
    return y;
}

inline double pairing_violation(const Vec12& x) {
    return (x - conj_permuted(x)).cwiseAbs().maxCoeff();
}

// Level populations implied by the inversions, in collective units:
// p0 + p1 + p2 = N, w1 = p0 - p1, w2 = p0 - p2.
struct Populations {
    double p0, p1, p2;
};

inline Populations populations(double n_atoms, double w1, double w2) {
    const double p0 = (n_atoms + w1 + w2) / 3.0;
    return {p0, p0 - w1, p0 - w2};
}

}  // namespace eit
