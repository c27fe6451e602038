#include "lambdajc/blocks.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lambdajc::blocks {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559L;
constexpr double kRootGapTol = 1e-7;
// Residues scale like 1/gap^2, so blocks whose root gap is small relative to
// the root magnitude are routed to direct diagonalization.
constexpr long double kBlockGapTol = 1e-5L;

Complex cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

// The cubic's coefficients grow like (chi n^2)^3, so roots and residues are
// computed in extended precision; coefficient rounding in double alone would
// cost several digits of block unitarity.
struct SpectrumLD {
    long double mu[3] = {0.0L, 0.0L, 0.0L};
    long double b[3] = {0.0L, 0.0L, 0.0L};
    bool degenerate = false;
};

long double cubic_eval(long double mu, long double x1, long double x2, long double x3) {
    return ((mu + x1) * mu + x2) * mu + x3;
}

long double cubic_deriv(long double mu, long double x1, long double x2) {
    return (3.0L * mu + 2.0L * x1) * mu + x2;
}

void cubic_coefficients_ld(const BlockAux& aux, const ModelParams& params, long double& x1,
                           long double& x2, long double& x3) {
    const long double v11 = aux.v11, v12 = aux.v12, v21 = aux.v21, v22 = aux.v22;
    const long double f1 = aux.f1, f2 = aux.f2;
    const long double d1 = params.delta1, d2 = params.delta2;
    x1 = v11 + 2.0L * v12 + v21 + 2.0L * v22 - d1 + 2.0L * d2;
    x2 = (v12 + v21 + d2) * (v11 + v12 + 2.0L * v22 - d1) + (v12 + v22) * (v11 + v22 - d1) +
         2.0L * d2 * (v12 + v21) + d2 * d2 - f1 * f1 - f2 * f2;
    x3 = d2 * (v12 + v21) * (v11 + v12 + 2.0L * v22 - d1) - f2 * f2 * (v11 + v22 - d1 + d2) +
         d2 * d2 * (v12 + v21) + (v12 + v21) * ((v12 + v22) * (v11 + v22 - d1) - f1 * f1);
}

// Trigonometric seeds for the three real roots.
void trig_roots(long double x1, long double x2, long double x3, long double mu[3]) {
    long double p = x1 * x1 - 3.0L * x2;
    if (p <= 0.0L) {
        mu[0] = mu[1] = mu[2] = -x1 / 3.0L;
        return;
    }
    long double s = sqrtl(p);
    long double arg = (9.0L * x1 * x2 - 2.0L * x1 * x1 * x1 - 27.0L * x3) / (2.0L * p * s);
    arg = std::clamp(arg, -1.0L, 1.0L);
    long double theta = acosl(arg) / 3.0L;
    for (int j = 0; j < 3; ++j)
        mu[j] = -x1 / 3.0L + (2.0L / 3.0L) * s * cosl(theta + (kTwoPiL / 3.0L) * j);
}

// The same cubic in factored form, g1 g2 g3 - f2^2 g1 - f1^2 g2 with
// g_i = shift_i + mu. Near the roots the shifted sums cancel before any
// multiplication, which keeps Newton residuals at the machine level even
// when the expanded coefficients are ~1e12.
struct FactoredCubic {
    long double s1, s2, s3, f1sq, f2sq;

    long double eval(long double mu) const {
        long double g1 = s1 + mu, g2 = s2 + mu, g3 = s3 + mu;
        return g1 * g2 * g3 - f2sq * g1 - f1sq * g2;
    }
    long double deriv(long double mu) const {
        long double g1 = s1 + mu, g2 = s2 + mu, g3 = s3 + mu;
        return g1 * g2 + g2 * g3 + g1 * g3 - f1sq - f2sq;
    }
};

SpectrumLD spectrum_ld(const BlockAux& aux, const ModelParams& params) {
    long double x1, x2, x3;
    cubic_coefficients_ld(aux, params, x1, x2, x3);
    SpectrumLD out;
    trig_roots(x1, x2, x3, out.mu);

    const long double d2 = params.delta2;
    FactoredCubic poly{
        // shifted diagonals of the |1>, |2>, |3> block members; the |2>
        // member's -delta2 cancels against the mu = -(E + delta2) shift
        static_cast<long double>(aux.v11) + aux.v22 - params.delta1 + d2,
        static_cast<long double>(aux.v12) + aux.v21,
        static_cast<long double>(aux.v12) + aux.v22 + d2,
        static_cast<long double>(aux.f1) * aux.f1, static_cast<long double>(aux.f2) * aux.f2};
    for (int j = 0; j < 3; ++j) {
        long double mu = out.mu[j];
        for (int it = 0; it < 3; ++it) {
            long double dp = poly.deriv(mu);
            if (dp == 0.0L) break;
            long double step = poly.eval(mu) / dp;
            if (fabsl(step) >= 0.5L * std::max(1.0L, fabsl(mu))) break;
            mu -= step;
            if (step == 0.0L) break;
        }
        out.mu[j] = mu;
    }

    long double scale = std::max({1.0L, fabsl(out.mu[0]), fabsl(out.mu[1]), fabsl(out.mu[2])});
    long double gap = std::min({fabsl(out.mu[0] - out.mu[1]), fabsl(out.mu[1] - out.mu[2]),
                                fabsl(out.mu[0] - out.mu[2])});
    if (gap < kBlockGapTol * scale) {
        out.degenerate = true;
        return out;
    }
    long double f1f2 = static_cast<long double>(aux.f1) * aux.f2;
    for (int j = 0; j < 3; ++j) {
        int k = (j + 1) % 3, l = (j + 2) % 3;
        out.b[j] = f1f2 / ((out.mu[j] - out.mu[k]) * (out.mu[j] - out.mu[l]));
    }
    return out;
}

}  // namespace

BlockAux block_auxiliaries(int n, int m, const ModelParams& params) {
    if (n < 1 || m < 0)
        throw std::invalid_argument("block_auxiliaries: requires n >= 1, m >= 0");
    BlockAux aux;
    double dn = n, dm = m;
    aux.v11 = params.chi1 * dn * (dn - 1.0);
    aux.v12 = params.chi1 * (dn - 1.0) * (dn - 2.0);
    aux.v21 = params.chi2 * dm * (dm + 1.0);
    aux.v22 = params.chi2 * dm * (dm - 1.0);
    aux.f1 = params.lambda1 * std::sqrt(dn) * intensity_factor(n, params, 1);
    aux.f2 = params.lambda2 * std::sqrt(dm + 1.0) * intensity_factor(m + 1, params, 2);
    return aux;
}

CubicCoefficients cubic_coefficients(const BlockAux& aux, const ModelParams& params) {
    long double x1, x2, x3;
    cubic_coefficients_ld(aux, params, x1, x2, x3);
    return {static_cast<double>(x1), static_cast<double>(x2), static_cast<double>(x3)};
}

CubicRoots cubic_roots(double x1, double x2, double x3) {
    long double mu[3];
    trig_roots(x1, x2, x3, mu);
    CubicRoots out;
    for (int j = 0; j < 3; ++j) {
        long double m = mu[j];
        long double dp = cubic_deriv(m, x1, x2);
        if (dp != 0.0L) {
            long double step = cubic_eval(m, x1, x2, x3) / dp;
            if (fabsl(step) < 0.5L * std::max(1.0L, fabsl(m))) m -= step;
        }
        out.mu[j] = static_cast<double>(m);
    }
    double lo = std::min({out.mu[0], out.mu[1], out.mu[2]});
    double hi = std::max({out.mu[0], out.mu[1], out.mu[2]});
    double gap = std::min({std::abs(out.mu[0] - out.mu[1]), std::abs(out.mu[1] - out.mu[2]),
                           std::abs(out.mu[0] - out.mu[2])});
    out.degenerate = gap < kRootGapTol * std::max(1.0, hi - lo);
    return out;
}

BlockSpectrum block_spectrum(int n, int m, const ModelParams& params) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("block_spectrum: requires n >= 1, m >= 1");
    BlockSpectrum spec;
    spec.n = n;
    spec.m = m;
    spec.aux = block_auxiliaries(n, m, params);
    if (spec.aux.f1 == 0.0 || spec.aux.f2 == 0.0) {
        spec.branch = Branch::Degenerate;
        return spec;
    }
    SpectrumLD s = spectrum_ld(spec.aux, params);
    for (int j = 0; j < 3; ++j) {
        spec.mu[j] = static_cast<double>(s.mu[j]);
        spec.b[j] = static_cast<double>(s.b[j]);
    }
    spec.branch = s.degenerate ? Branch::Degenerate : Branch::General;
    return spec;
}

Coefficients coefficients_general(int n, int m, double t, const ModelParams& params) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("coefficients_general: requires n >= 1, m >= 1");
    BlockAux aux = block_auxiliaries(n, m, params);
    if (aux.f1 == 0.0 || aux.f2 == 0.0) return coefficients_fallback(n, m, t, params);
    SpectrumLD s = spectrum_ld(aux, params);
    if (s.degenerate) return coefficients_fallback(n, m, t, params);

    const long double v12 = aux.v12, v21 = aux.v21, v22 = aux.v22;
    const long double f2sq = static_cast<long double>(aux.f2) * aux.f2;
    const long double f1f2 = static_cast<long double>(aux.f1) * aux.f2;
    const long double d2 = params.delta2;

    Complex sum_a = 0.0, sum_b = 0.0, sum_c = 0.0;
    for (int j = 0; j < 3; ++j) {
        Complex e = cis(static_cast<double>(s.mu[j]) * t);
        long double w2 = s.mu[j] + v12 + v21;
        long double w3 = d2 + s.mu[j] + v12 + v22;
        sum_b += static_cast<double>(s.b[j]) * e;
        sum_c += static_cast<double>(s.b[j] * w2) * e;
        sum_a += static_cast<double>(s.b[j] * (w3 * w2 - f2sq) / f1f2) * e;
    }

    Coefficients out;
    out.a = cis((params.delta2 - params.delta1) * t) * sum_a;
    out.b = sum_b;
    out.c = -cis(params.delta2 * t) / aux.f2 * sum_c;
    return out;
}

Coefficients coefficients_m_zero(int n, double t, const ModelParams& params) {
    if (n < 1) throw std::invalid_argument("coefficients_m_zero: requires n >= 1");
    BlockAux aux = block_auxiliaries(n, 0, params);
    if (aux.f1 == 0.0) return coefficients_fallback(n, 0, t, params);

    // Two-level block {|1;n;0>, |3;n-1;0>}: the emission channel into the
    // empty F2 mode is dropped, so B_n0(t) = 0. The detuning delta1 enters
    // the quadratic's coefficients; at delta1 = 0 these reduce to
    // y1 = V11 + V12 and y2 = V11 V12 - f1^2.
    // quadratic (alpha + v11)(alpha + v12 + delta1) - f1^2 = 0
    const long double s1 = aux.v11;
    const long double s2 = static_cast<long double>(aux.v12) + params.delta1;
    const long double f1sq = static_cast<long double>(aux.f1) * aux.f1;
    long double y1 = s1 + s2;
    long double y2 = s1 * s2 - f1sq;
    long double disc = y1 * y1 - 4.0L * y2;
    long double sq = sqrtl(std::max(disc, 0.0L));
    long double a1, a2;
    if (y1 != 0.0L) {
        long double qq = -0.5L * (y1 + copysignl(sq, y1));
        a1 = qq;
        a2 = (qq != 0.0L) ? y2 / qq : 0.0L;
    } else {
        a1 = 0.5L * sq;
        a2 = -0.5L * sq;
    }
    for (long double* root : {&a1, &a2}) {
        for (int it = 0; it < 2; ++it) {
            long double g1 = s1 + *root, g2 = s2 + *root;
            long double dp = g1 + g2;
            if (dp == 0.0L) break;
            long double step = (g1 * g2 - f1sq) / dp;
            if (fabsl(step) >= 0.5L * std::max(1.0L, fabsl(*root))) break;
            *root -= step;
        }
    }
    long double scale = std::max({1.0L, fabsl(a1), fabsl(a2)});
    if (fabsl(a1 - a2) < kBlockGapTol * scale)
        return coefficients_fallback(n, 0, t, params);

    long double c1 = (aux.v11 + a2) / (a2 - a1);
    long double c2 = (aux.v11 + a1) / (a1 - a2);
    Complex e1 = cis(static_cast<double>(a1) * t), e2 = cis(static_cast<double>(a2) * t);

    Coefficients out;
    out.a = static_cast<double>(c1) * e1 + static_cast<double>(c2) * e2;
    out.b = 0.0;
    out.c = -cis(params.delta1 * t) *
            (static_cast<double>(c1 * (a1 + aux.v11) / aux.f1) * e1 +
             static_cast<double>(c2 * (a2 + aux.v11) / aux.f1) * e2);
    return out;
}

Coefficients coefficients_fallback(int n, int m, double t, const ModelParams& params) {
    if (n < 1 || m < 0)
        throw std::invalid_argument("coefficients_fallback: requires n >= 1, m >= 0");
    BlockAux aux = block_auxiliaries(n, m, params);
    Coefficients out;
    if (m == 0) {
        Eigen::Matrix2d h;
        h << aux.v11 - params.delta1, aux.f1, aux.f1, aux.v12;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
        Eigen::Vector2cd u = Eigen::Vector2cd::Zero();
        for (int j = 0; j < 2; ++j) {
            Complex phase = cis(-es.eigenvalues()(j) * t);
            u += phase * es.eigenvectors().col(j).cast<Complex>() * es.eigenvectors()(0, j);
        }
        out.a = u(0) * cis(-params.delta1 * t);
        out.b = 0.0;
        out.c = u(1);
        return out;
    }
    Eigen::Matrix3d h;
    h << aux.v11 + aux.v22 - params.delta1, 0.0, aux.f1,
         0.0, aux.v12 + aux.v21 - params.delta2, aux.f2,
         aux.f1, aux.f2, aux.v12 + aux.v22;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
    Eigen::Vector3cd u = Eigen::Vector3cd::Zero();
    for (int j = 0; j < 3; ++j) {
        Complex phase = cis(-es.eigenvalues()(j) * t);
        u += phase * es.eigenvectors().col(j).cast<Complex>() * es.eigenvectors()(0, j);
    }
    out.a = u(0) * cis(-params.delta1 * t);
    out.b = u(1) * cis(-params.delta2 * t);
    out.c = u(2);
    return out;
}

Coefficients block_coefficients(int n, int m, double t, const ModelParams& params) {
    if (n == 0) {
        // No |1> -> |3> transition without a probe photon; only the F2 Kerr
        // phase survives (unity whenever chi2 = 0).
        double kerr = params.chi2 * static_cast<double>(m) * (m - 1.0);
        return {cis(-kerr * t), 0.0, 0.0};
    }
    if (m == 0) return coefficients_m_zero(n, t, params);
    return coefficients_general(n, m, t, params);
}

Complex AmplitudeTensor::psi1(int n, int m) const {
    return weight(n, m) * a(n, m) * cis(params.delta1 * t);
}

Complex AmplitudeTensor::psi2(int n, int m) const {
    return weight(n, m) * b(n, m) * cis(params.delta2 * t);
}

Complex AmplitudeTensor::psi3(int n, int m) const { return weight(n, m) * c(n, m); }

AmplitudeTensor evolve(const fock::FockAmplitudes& q, const fock::FockAmplitudes& r,
                       const ModelParams& params, double t) {
    params.validate();
    AmplitudeTensor out;
    out.q = q;
    out.r = r;
    out.params = params;
    out.t = t;
    out.rows = q.size();
    out.cols = r.size();
    size_t total = static_cast<size_t>(out.rows) * static_cast<size_t>(out.cols);
    out.A.assign(total, Complex(1.0));
    out.B.assign(total, Complex(0.0));
    out.C.assign(total, Complex(0.0));
    for (int n = 0; n < out.rows; ++n) {
        for (int m = 0; m < out.cols; ++m) {
            if (out.weight(n, m) == Complex(0.0)) continue;  // parity gaps etc.
            Coefficients coef = block_coefficients(n, m, t, params);
            size_t k = out.idx(n, m);
            out.A[k] = coef.a;
            out.B[k] = coef.b;
            out.C[k] = coef.c;
        }
    }
    return out;
}

}  // namespace lambdajc::blocks
