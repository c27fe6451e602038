#pragma once

#include <Eigen/Dense>

#include <complex>

#include "lambdajc/blocks.hpp"

namespace lambdajc::obs {

using Complex = std::complex<double>;

enum class Subsystem { Atom, Field1, Field2 };

// Hermitian reduced density matrix of one subsystem.
struct ReducedDensity {
    Subsystem subsystem = Subsystem::Atom;
    Eigen::MatrixXcd matrix;

    int dim() const { return static_cast<int>(matrix.rows()); }
    double trace_real() const { return matrix.trace().real(); }
    double purity() const;                // Tr rho^2
    double expectation_n() const;         // Tr[rho N], number operator diag(0..dim-1)
    Eigen::VectorXd eigenvalues() const;  // ascending
};

struct ObservableRecord {
    double t = 0.0;
    double mean_n1 = 0.0;
    double var_n1 = 0.0;
    double mandel_q1 = 0.0;
    double mean_n2 = 0.0;
    double pop1 = 0.0;
    double pop2 = 0.0;
    double pop3 = 0.0;
    double svne = 0.0;
};

ReducedDensity rho_atom(const blocks::AmplitudeTensor& tensor);
ReducedDensity rho_field1(const blocks::AmplitudeTensor& tensor);
ReducedDensity rho_field2(const blocks::AmplitudeTensor& tensor);

// <N_mode> from the diagonal block weights, without materializing rho.
double mean_photon(const blocks::AmplitudeTensor& tensor, int mode);
double photon_variance(const blocks::AmplitudeTensor& tensor, int mode);
double mandel_q(const blocks::AmplitudeTensor& tensor, int mode);

// Atomic populations (pop1, pop2, pop3).
struct Populations {
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
};
Populations atom_populations(const blocks::AmplitudeTensor& tensor);

// von Neumann entropy -Tr[rho ln rho], natural log, eigenvalues clipped
// to [0, 1]; values below 1e-14 are treated as exact zeros.
double svne(const ReducedDensity& rho);

ObservableRecord observable_record(const blocks::AmplitudeTensor& tensor);

}  // namespace lambdajc::obs
