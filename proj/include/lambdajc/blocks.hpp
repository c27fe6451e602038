#pragma once

#include <complex>
#include <vector>

#include "lambdajc/fock.hpp"
#include "lambdajc/model.hpp"

namespace lambdajc::blocks {

using Complex = std::complex<double>;

// Per-block quantities entering the closed-form solution. The excitation
// block (n, m) spans {|1;n;m>, |2;n-1;m+1>, |3;n-1;m>} and is invariant
// under the interaction Hamiltonian.
struct BlockAux {
    double v11 = 0.0;  // chi1 n (n-1)
    double v12 = 0.0;  // chi1 (n-1)(n-2)
    double v21 = 0.0;  // chi2 m (m+1)
    double v22 = 0.0;  // chi2 m (m-1)
    double f1 = 0.0;   // lambda1 sqrt(n)   f(n)
    double f2 = 0.0;   // lambda2 sqrt(m+1) f(m+1)
};

enum class Branch { General, MZero, NZero, Degenerate };

// Roots and residues of the block's cubic characteristic polynomial
// mu^3 + x1 mu^2 + x2 mu + x3.
struct BlockSpectrum {
    int n = 0;
    int m = 0;
    double mu[3] = {0.0, 0.0, 0.0};
    double b[3] = {0.0, 0.0, 0.0};
    BlockAux aux;
    Branch branch = Branch::General;
};

// Time-t amplitudes of one block; the full coefficient of each basis state
// of the interaction-picture expansion carries additional phases
// e^{i delta1 t} (A) and e^{i delta2 t} (B).
struct Coefficients {
    Complex a = 1.0;
    Complex b = 0.0;
    Complex c = 0.0;

    double norm_sq() const { return std::norm(a) + std::norm(b) + std::norm(c); }
};

BlockAux block_auxiliaries(int n, int m, const ModelParams& params);

// Coefficients of the cubic whose roots are the block frequencies mu_j,
// for the (n >= 1, m >= 1) branch.
struct CubicCoefficients {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

CubicCoefficients cubic_coefficients(const BlockAux& aux, const ModelParams& params);

struct CubicRoots {
    double mu[3] = {0.0, 0.0, 0.0};
    bool degenerate = false;  // root gap too small for stable residues
};

// Trigonometric solution of mu^3 + x1 mu^2 + x2 mu + x3 = 0 for the
// all-real-roots case, with one Newton polish per root. Flags spectra whose
// minimum pairwise gap is below 1e-7 x max(1, spread) as degenerate.
CubicRoots cubic_roots(double x1, double x2, double x3);

// Roots, residues and auxiliaries of block (n, m). Branch::Degenerate marks
// spectra the closed forms cannot evaluate stably (coalescing roots or a
// vanishing coupling); callers fall back to direct diagonalization there.
BlockSpectrum block_spectrum(int n, int m, const ModelParams& params);

Coefficients coefficients_general(int n, int m, double t, const ModelParams& params);
Coefficients coefficients_m_zero(int n, double t, const ModelParams& params);

// Direct diagonalization of the block Hamiltonian; the rescue path for
// degenerate spectra and vanishing couplings, exact for all blocks.
Coefficients coefficients_fallback(int n, int m, double t, const ModelParams& params);

// Dispatches to the correct branch for block (n, m) at time t.
Coefficients block_coefficients(int n, int m, double t, const ModelParams& params);

// The complete interaction-picture state at time t over the truncated
// lattice: amplitude of |1;n;m> is q_n r_m A(n,m) e^{i delta1 t}, of
// |2;n-1;m+1> is q_n r_m B(n,m) e^{i delta2 t}, of |3;n-1;m> is
// q_n r_m C(n,m).
struct AmplitudeTensor {
    fock::FockAmplitudes q;  // mode F1
    fock::FockAmplitudes r;  // mode F2
    ModelParams params;
    double t = 0.0;
    int rows = 0;  // cutoff1 + 1
    int cols = 0;  // cutoff2 + 1
    std::vector<Complex> A, B, C;

    size_t idx(int n, int m) const {
        return static_cast<size_t>(n) * static_cast<size_t>(cols) + static_cast<size_t>(m);
    }
    Complex a(int n, int m) const { return A[idx(n, m)]; }
    Complex b(int n, int m) const { return B[idx(n, m)]; }
    Complex c(int n, int m) const { return C[idx(n, m)]; }

    // Weight q_n r_m of block (n, m).
    Complex weight(int n, int m) const {
        return q.coeffs[static_cast<size_t>(n)] * r.coeffs[static_cast<size_t>(m)];
    }

    // Full interaction-picture amplitudes of the three members of block
    // (n, m), detuning phases included.
    Complex psi1(int n, int m) const;
    Complex psi2(int n, int m) const;
    Complex psi3(int n, int m) const;
};

AmplitudeTensor evolve(const fock::FockAmplitudes& q, const fock::FockAmplitudes& r,
                       const ModelParams& params, double t);

}  // namespace lambdajc::blocks
