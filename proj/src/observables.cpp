#include "lambdajc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lambdajc::obs {

namespace {

constexpr double kEntropyFloor = 1e-14;

}  // namespace

double ReducedDensity::purity() const { return (matrix * matrix).trace().real(); }

double ReducedDensity::expectation_n() const {
    double acc = 0.0;
    for (int n = 0; n < dim(); ++n) acc += n * matrix(n, n).real();
    return acc;
}

Eigen::VectorXd ReducedDensity::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

ReducedDensity rho_atom(const blocks::AmplitudeTensor& tensor) {
    const int rows = tensor.rows, cols = tensor.cols;
    ReducedDensity rho;
    rho.subsystem = Subsystem::Atom;
    rho.matrix = Eigen::MatrixXcd::Zero(3, 3);

    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
    Complex r12 = 0.0, r13 = 0.0, r23 = 0.0;
    for (int n = 0; n < rows; ++n) {
        for (int m = 0; m < cols; ++m) {
            if (tensor.weight(n, m) == Complex(0.0)) continue;
            double w2 = std::norm(tensor.weight(n, m));
            p1 += w2 * std::norm(tensor.a(n, m));
            p2 += w2 * std::norm(tensor.b(n, m));
            p3 += w2 * std::norm(tensor.c(n, m));
            // coherences pair block (n, m) with its neighbours sharing a
            // field configuration; detuning phases enter via psi1/2/3
            if (n + 1 < rows) {
                if (m >= 1) r12 += tensor.psi1(n, m) * std::conj(tensor.psi2(n + 1, m - 1));
                r13 += tensor.psi1(n, m) * std::conj(tensor.psi3(n + 1, m));
            }
            if (n >= 1 && m + 1 < cols)
                r23 += tensor.psi2(n, m) * std::conj(tensor.psi3(n, m + 1));
        }
    }
    rho.matrix(0, 0) = p1;
    rho.matrix(1, 1) = p2;
    rho.matrix(2, 2) = p3;
    rho.matrix(0, 1) = r12;
    rho.matrix(1, 0) = std::conj(r12);
    rho.matrix(0, 2) = r13;
    rho.matrix(2, 0) = std::conj(r13);
    rho.matrix(1, 2) = r23;
    rho.matrix(2, 1) = std::conj(r23);
    return rho;
}

ReducedDensity rho_field1(const blocks::AmplitudeTensor& tensor) {
    const int rows = tensor.rows, cols = tensor.cols;
    ReducedDensity rho;
    rho.subsystem = Subsystem::Field1;
    rho.matrix = Eigen::MatrixXcd::Zero(rows, rows);
    for (int n = 0; n < rows; ++n) {
        for (int np = n; np < rows; ++np) {
            Complex acc = 0.0;
            for (int l = 0; l < cols; ++l) {
                acc += tensor.psi1(n, l) * std::conj(tensor.psi1(np, l));
                if (n + 1 < rows && np + 1 < rows) {
                    acc += tensor.psi3(n + 1, l) * std::conj(tensor.psi3(np + 1, l));
                    acc += tensor.psi2(n + 1, l) * std::conj(tensor.psi2(np + 1, l));
                }
            }
            rho.matrix(n, np) = acc;
            if (np != n) rho.matrix(np, n) = std::conj(acc);
        }
    }
    return rho;
}

ReducedDensity rho_field2(const blocks::AmplitudeTensor& tensor) {
    const int rows = tensor.rows, cols = tensor.cols;
    const int dim = cols + 1;  // the B sector reaches one slot above the F2 window
    ReducedDensity rho;
    rho.subsystem = Subsystem::Field2;
    rho.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (int l = 0; l < dim; ++l) {
        for (int lp = l; lp < dim; ++lp) {
            Complex acc = 0.0;
            for (int n = 0; n < rows; ++n) {
                if (l < cols && lp < cols) {
                    acc += tensor.psi1(n, l) * std::conj(tensor.psi1(n, lp));
                    if (n >= 1) acc += tensor.psi3(n, l) * std::conj(tensor.psi3(n, lp));
                }
                if (n >= 1 && l >= 1 && lp >= 1)
                    acc += tensor.psi2(n, l - 1) * std::conj(tensor.psi2(n, lp - 1));
            }
            rho.matrix(l, lp) = acc;
            if (lp != l) rho.matrix(lp, l) = std::conj(acc);
        }
    }
    return rho;
}

namespace {

// First and second moments of the photon number from the diagonal weights.
void photon_moments(const blocks::AmplitudeTensor& tensor, int mode, double& mean,
                    double& second) {
    if (mode != 1 && mode != 2) throw std::invalid_argument("photon mode must be 1 or 2");
    mean = 0.0;
    second = 0.0;
    for (int n = 0; n < tensor.rows; ++n) {
        for (int m = 0; m < tensor.cols; ++m) {
            if (tensor.weight(n, m) == Complex(0.0)) continue;
            double w2 = std::norm(tensor.weight(n, m));
            double pa = std::norm(tensor.a(n, m));
            double pb = std::norm(tensor.b(n, m));
            double pc = std::norm(tensor.c(n, m));
            if (mode == 1) {
                double na = n, nbc = n - 1.0;
                mean += w2 * (na * pa + (n >= 1 ? nbc * (pb + pc) : 0.0));
                second += w2 * (na * na * pa + (n >= 1 ? nbc * nbc * (pb + pc) : 0.0));
            } else {
                double na = m, nb = m + 1.0;
                mean += w2 * (na * (pa + pc) + nb * pb);
                second += w2 * (na * na * (pa + pc) + nb * nb * pb);
            }
        }
    }
}

}  // namespace

double mean_photon(const blocks::AmplitudeTensor& tensor, int mode) {
    double mean, second;
    photon_moments(tensor, mode, mean, second);
    return mean;
}

double photon_variance(const blocks::AmplitudeTensor& tensor, int mode) {
    double mean, second;
    photon_moments(tensor, mode, mean, second);
    return second - mean * mean;
}

double mandel_q(const blocks::AmplitudeTensor& tensor, int mode) {
    double mean, second;
    photon_moments(tensor, mode, mean, second);
    if (mean <= 0.0)
        throw std::domain_error("mandel_q: undefined for <N> = 0");
    return (second - mean * mean) / mean - 1.0;
}

Populations atom_populations(const blocks::AmplitudeTensor& tensor) {
    Populations p;
    for (int n = 0; n < tensor.rows; ++n) {
        for (int m = 0; m < tensor.cols; ++m) {
            if (tensor.weight(n, m) == Complex(0.0)) continue;
            double w2 = std::norm(tensor.weight(n, m));
            p.p1 += w2 * std::norm(tensor.a(n, m));
            p.p2 += w2 * std::norm(tensor.b(n, m));
            p.p3 += w2 * std::norm(tensor.c(n, m));
        }
    }
    return p;
}

double svne(const ReducedDensity& rho) {
    double tr = rho.trace_real();
    if (std::abs(tr - 1.0) > 1e-8)
        throw std::runtime_error("svne: density matrix trace deviates from 1");
    Eigen::VectorXd ev = rho.eigenvalues();
    double s = 0.0;
    for (int i = 0; i < ev.size(); ++i) {
        double lam = std::clamp(ev(i), 0.0, 1.0);
        if (lam < kEntropyFloor) continue;
        s -= lam * std::log(lam);
    }
    return s;
}

ObservableRecord observable_record(const blocks::AmplitudeTensor& tensor) {
    ObservableRecord rec;
    rec.t = tensor.t;
    double mean1, second1;
    photon_moments(tensor, 1, mean1, second1);
    rec.mean_n1 = mean1;
    rec.var_n1 = second1 - mean1 * mean1;
    rec.mandel_q1 = mean1 > 0.0 ? rec.var_n1 / mean1 - 1.0
                                : std::numeric_limits<double>::quiet_NaN();
    rec.mean_n2 = mean_photon(tensor, 2);
    ReducedDensity atom = rho_atom(tensor);
    rec.pop1 = atom.matrix(0, 0).real();
    rec.pop2 = atom.matrix(1, 1).real();
    rec.pop3 = atom.matrix(2, 2).real();
    rec.svne = svne(atom);
    return rec;
}

}  // namespace lambdajc::obs
