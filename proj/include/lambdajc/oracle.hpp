#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>

#include "lambdajc/blocks.hpp"
#include "lambdajc/observables.hpp"

namespace lambdajc::oracle {

using Complex = std::complex<double>;

// Flat indexing of the truncated product basis |atom; n1; n2>,
// atom in {1,2,3}, n1 in [0, cutoff1], n2 in [0, cutoff2].
struct BasisLayout {
    int cutoff1 = 0;
    int cutoff2 = 0;

    int dim1() const { return cutoff1 + 1; }
    int dim2() const { return cutoff2 + 1; }
    long dim() const { return 3L * dim1() * dim2(); }

    long flat(int atom, int n1, int n2) const {
        return (static_cast<long>(atom - 1) * dim1() + n1) * dim2() + n2;
    }
    void unflatten(long index, int& atom, int& n1, int& n2) const {
        n2 = static_cast<int>(index % dim2());
        long rest = index / dim2();
        n1 = static_cast<int>(rest % dim1());
        atom = static_cast<int>(rest / dim1()) + 1;
    }
};

struct GlobalState {
    BasisLayout layout;
    Eigen::VectorXcd amplitudes;
    double t = 0.0;

    double norm() const { return amplitudes.norm(); }
};

// |1> x |q> x |r> as a flat global state.
GlobalState product_state(const fock::FockAmplitudes& q, const fock::FockAmplitudes& r,
                          int cutoff1, int cutoff2);

// Interaction Hamiltonian on the truncated lattice, real symmetric. The
// emission channel out of an empty F2 mode (the B_n0 = 0 convention of the
// closed forms) is omitted: the lambda2 coupling acts only between
// |2;x;y> and |3;x;y-1> with y >= 2.
Eigen::SparseMatrix<double> build_interaction_hamiltonian(const ModelParams& params,
                                                          int cutoff1, int cutoff2);

// Exact propagation exp(-i H t) |state0> via per-block eigendecomposition.
GlobalState evolve_numeric(const GlobalState& state0, const ModelParams& params, double t);

obs::ReducedDensity partial_trace(const GlobalState& state, obs::Subsystem keep);

// |<a|b>|^2
double fidelity(const GlobalState& a, const GlobalState& b);

// Flattens the closed-form tensor into a global state on the natural
// lattice (cutoff1 = q.cutoff, cutoff2 = r.cutoff + 1), detuning phases
// included, for direct comparison with evolve_numeric.
GlobalState to_global_state(const blocks::AmplitudeTensor& tensor);

}  // namespace lambdajc::oracle
