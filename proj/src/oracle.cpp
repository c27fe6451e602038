#include "lambdajc/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lambdajc::oracle {

namespace {

Complex cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Diagonal element of the interaction Hamiltonian at |atom; n1; n2>.
double diagonal_element(const ModelParams& p, int atom, int n1, int n2) {
    double d = p.chi1 * n1 * (n1 - 1.0) + p.chi2 * n2 * (n2 - 1.0);
    if (atom == 1) d -= p.delta1;
    if (atom == 2) d -= p.delta2;
    return d;
}

double probe_coupling(const ModelParams& p, int n1) {
    return p.lambda1 * std::sqrt(static_cast<double>(n1)) * intensity_factor(n1, p, 1);
}

double pump_coupling(const ModelParams& p, int n2) {
    return p.lambda2 * std::sqrt(static_cast<double>(n2)) * intensity_factor(n2, p, 2);
}

}  // namespace

GlobalState product_state(const fock::FockAmplitudes& q, const fock::FockAmplitudes& r,
                          int cutoff1, int cutoff2) {
    if (q.cutoff > cutoff1 || r.cutoff > cutoff2)
        throw std::invalid_argument("product_state: amplitudes exceed the lattice cutoffs");
    GlobalState state;
    state.layout = {cutoff1, cutoff2};
    state.amplitudes = Eigen::VectorXcd::Zero(state.layout.dim());
    for (int n = 0; n <= q.cutoff; ++n)
        for (int m = 0; m <= r.cutoff; ++m)
            state.amplitudes(state.layout.flat(1, n, m)) =
                q.coeffs[static_cast<size_t>(n)] * r.coeffs[static_cast<size_t>(m)];
    return state;
}

Eigen::SparseMatrix<double> build_interaction_hamiltonian(const ModelParams& params,
                                                          int cutoff1, int cutoff2) {
    if (cutoff1 < 0 || cutoff2 < 0)
        throw std::invalid_argument("build_interaction_hamiltonian: cutoffs must be >= 0");
    params.validate();
    BasisLayout layout{cutoff1, cutoff2};
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(layout.dim()) * 3);

    for (int atom = 1; atom <= 3; ++atom)
        for (int n1 = 0; n1 <= cutoff1; ++n1)
            for (int n2 = 0; n2 <= cutoff2; ++n2) {
                long i = layout.flat(atom, n1, n2);
                double d = diagonal_element(params, atom, n1, n2);
                if (d != 0.0) triplets.emplace_back(i, i, d);
            }

    // lambda1 (R1 sigma_31 + h.c.): |1;n;m> <-> |3;n-1;m>
    for (int n1 = 1; n1 <= cutoff1; ++n1)
        for (int n2 = 0; n2 <= cutoff2; ++n2) {
            long i = layout.flat(1, n1, n2);
            long j = layout.flat(3, n1 - 1, n2);
            double g = probe_coupling(params, n1);
            triplets.emplace_back(i, j, g);
            triplets.emplace_back(j, i, g);
        }

    // lambda2 (R2 sigma_32 + h.c.): |2;x;y> <-> |3;x;y-1>, y >= 2 only
    for (int n1 = 0; n1 <= cutoff1; ++n1)
        for (int n2 = 2; n2 <= cutoff2; ++n2) {
            long i = layout.flat(2, n1, n2);
            long j = layout.flat(3, n1, n2 - 1);
            double g = pump_coupling(params, n2);
            triplets.emplace_back(i, j, g);
            triplets.emplace_back(j, i, g);
        }

    Eigen::SparseMatrix<double> h(layout.dim(), layout.dim());
    h.setFromTriplets(triplets.begin(), triplets.end());
    return h;
}

GlobalState evolve_numeric(const GlobalState& state0, const ModelParams& params, double t) {
    params.validate();
    const BasisLayout& layout = state0.layout;
    GlobalState out = state0;
    out.t = state0.t + t;
    std::vector<bool> visited(static_cast<size_t>(layout.dim()), false);

    // Excitation blocks (n, m): {|1;n;m>, |2;n-1;m+1>, |3;n-1;m>}; the |2>
    // member exists only for m >= 1 (and within the lattice).
    for (int n = 1; n <= layout.cutoff1; ++n) {
        for (int m = 0; m <= layout.cutoff2; ++m) {
            std::vector<long> members;
            members.push_back(layout.flat(1, n, m));
            if (m >= 1 && m + 1 <= layout.cutoff2) members.push_back(layout.flat(2, n - 1, m + 1));
            members.push_back(layout.flat(3, n - 1, m));

            int k = static_cast<int>(members.size());
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(k, k);
            for (int a = 0; a < k; ++a) {
                int atom, x, y;
                layout.unflatten(members[static_cast<size_t>(a)], atom, x, y);
                h(a, a) = diagonal_element(params, atom, x, y);
            }
            // couplings: |1> member is row 0, |3> member is the last row
            h(0, k - 1) = h(k - 1, 0) = probe_coupling(params, n);
            if (k == 3) h(1, 2) = h(2, 1) = pump_coupling(params, m + 1);

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
            Eigen::VectorXcd local(k);
            for (int a = 0; a < k; ++a) local(a) = state0.amplitudes(members[static_cast<size_t>(a)]);
            Eigen::VectorXcd phases(k);
            for (int j = 0; j < k; ++j) phases(j) = cis(-es.eigenvalues()(j) * t);
            Eigen::VectorXcd evolved =
                es.eigenvectors().cast<Complex>() *
                (phases.array() * (es.eigenvectors().transpose().cast<Complex>() * local).array())
                    .matrix();
            for (int a = 0; a < k; ++a) {
                out.amplitudes(members[static_cast<size_t>(a)]) = evolved(a);
                visited[static_cast<size_t>(members[static_cast<size_t>(a)])] = true;
            }
        }
    }

    // Everything else is diagonal: n = 0 probe column and orphan |2> states.
    for (long i = 0; i < layout.dim(); ++i) {
        if (visited[static_cast<size_t>(i)]) continue;
        int atom, n1, n2;
        layout.unflatten(i, atom, n1, n2);
        out.amplitudes(i) *= cis(-diagonal_element(params, atom, n1, n2) * t);
    }
    return out;
}

obs::ReducedDensity partial_trace(const GlobalState& state, obs::Subsystem keep) {
    const BasisLayout& layout = state.layout;
    obs::ReducedDensity rho;
    rho.subsystem = keep;
    switch (keep) {
        case obs::Subsystem::Atom: {
            rho.matrix = Eigen::MatrixXcd::Zero(3, 3);
            for (int a = 1; a <= 3; ++a)
                for (int b = 1; b <= 3; ++b)
                    for (int n1 = 0; n1 <= layout.cutoff1; ++n1)
                        for (int n2 = 0; n2 <= layout.cutoff2; ++n2)
                            rho.matrix(a - 1, b - 1) +=
                                state.amplitudes(layout.flat(a, n1, n2)) *
                                std::conj(state.amplitudes(layout.flat(b, n1, n2)));
            break;
        }
        case obs::Subsystem::Field1: {
            rho.matrix = Eigen::MatrixXcd::Zero(layout.dim1(), layout.dim1());
            for (int n = 0; n <= layout.cutoff1; ++n)
                for (int np = 0; np <= layout.cutoff1; ++np)
                    for (int a = 1; a <= 3; ++a)
                        for (int n2 = 0; n2 <= layout.cutoff2; ++n2)
                            rho.matrix(n, np) += state.amplitudes(layout.flat(a, n, n2)) *
                                                 std::conj(state.amplitudes(layout.flat(a, np, n2)));
            break;
        }
        case obs::Subsystem::Field2: {
            rho.matrix = Eigen::MatrixXcd::Zero(layout.dim2(), layout.dim2());
            for (int m = 0; m <= layout.cutoff2; ++m)
                for (int mp = 0; mp <= layout.cutoff2; ++mp)
                    for (int a = 1; a <= 3; ++a)
                        for (int n1 = 0; n1 <= layout.cutoff1; ++n1)
                            rho.matrix(m, mp) += state.amplitudes(layout.flat(a, n1, m)) *
                                                 std::conj(state.amplitudes(layout.flat(a, n1, mp)));
            break;
        }
    }
    return rho;
}

double fidelity(const GlobalState& a, const GlobalState& b) {
    if (a.layout.cutoff1 != b.layout.cutoff1 || a.layout.cutoff2 != b.layout.cutoff2)
        throw std::invalid_argument("fidelity: mismatched lattices");
    Complex overlap = a.amplitudes.dot(b.amplitudes);  // conjugates the left factor
    return std::norm(overlap);
}

GlobalState to_global_state(const blocks::AmplitudeTensor& tensor) {
    GlobalState state;
    state.layout = {tensor.rows - 1, tensor.cols};  // one extra F2 slot for the B sector
    state.t = tensor.t;
    state.amplitudes = Eigen::VectorXcd::Zero(state.layout.dim());
    for (int n = 0; n < tensor.rows; ++n) {
        for (int m = 0; m < tensor.cols; ++m) {
            if (tensor.weight(n, m) == Complex(0.0)) continue;
            state.amplitudes(state.layout.flat(1, n, m)) += tensor.psi1(n, m);
            if (n >= 1) {
                state.amplitudes(state.layout.flat(2, n - 1, m + 1)) += tensor.psi2(n, m);
                state.amplitudes(state.layout.flat(3, n - 1, m)) += tensor.psi3(n, m);
            }
        }
    }
    return state;
}

}  // namespace lambdajc::oracle
