#include "lambdajc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lambdajc::fock {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ln n! via lgamma; exact enough for the n <= ~1024 range used here.
double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// ln[m! L_m(-x)] for x >= 0, the squared norm of (a^dag)^m |alpha| with
// x = |alpha|^2. All series terms are positive; summed in log domain.
double log_pacs_norm_sq(int m, double x) {
    if (m == 0) return 0.0;
    if (x == 0.0) return log_factorial(m);
    // m! L_m(-x) = sum_k [m!/(k! (m-k)!)]^... expanded: sum_k (m!)^2 x^k / (k!^2 (m-k)!)
    // from m! * sum_k C(m,k) x^k / k!
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(static_cast<size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        double t = 2.0 * log_factorial(m) - 2.0 * log_factorial(k) -
                   log_factorial(m - k) + k * std::log(x);
        terms[static_cast<size_t>(k)] = t;
        max_term = std::max(max_term, t);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - max_term);
    return max_term + std::log(acc);
}

Complex polar_amplitude(double log_mag, double phase) {
    double mag = std::exp(log_mag);
    return Complex(mag * std::cos(phase), mag * std::sin(phase));
}

// Coherent-state amplitude of |n>, exact untruncated normalization.
Complex coherent_coeff(Complex alpha, int n) {
    double a = std::abs(alpha);
    if (a == 0.0) return n == 0 ? Complex(1.0) : Complex(0.0);
    double log_mag = -0.5 * a * a + n * std::log(a) - 0.5 * log_factorial(n);
    return polar_amplitude(log_mag, n * std::arg(alpha));
}

FockAmplitudes finalize(std::vector<Complex> coeffs) {
    FockAmplitudes out;
    out.cutoff = static_cast<int>(coeffs.size()) - 1;
    double window = 0.0;
    for (const Complex& c : coeffs) window += std::norm(c);
    out.tail_mass = std::max(0.0, 1.0 - window);
    double scale = 1.0 / std::sqrt(window);
    for (Complex& c : coeffs) c *= scale;
    out.coeffs = std::move(coeffs);
    return out;
}

void require_cutoff(int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
}

double cat_phase(FieldKind kind) {
    switch (kind) {
        case FieldKind::EvenCat: return 0.0;
        case FieldKind::OddCat: return kPi;
        case FieldKind::YurkeStoler: return 0.5 * kPi;
        default:
            throw std::invalid_argument("cat_amplitudes: kind must be a cat state");
    }
}

}  // namespace

std::string to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::Coherent: return "coherent";
        case FieldKind::PhotonAdded: return "pacs";
        case FieldKind::EvenCat: return "even_cat";
        case FieldKind::OddCat: return "odd_cat";
        case FieldKind::YurkeStoler: return "yurke_stoler";
        case FieldKind::SqueezedVacuum: return "squeezed_vacuum";
        case FieldKind::Fock: return "fock";
    }
    return "?";
}

FieldSpec FieldSpec::coherent(Complex alpha) { return {FieldKind::Coherent, alpha, 0, 0.0, 0}; }

FieldSpec FieldSpec::photon_added(Complex alpha, int m) {
    FieldSpec s;
    s.kind = FieldKind::PhotonAdded;
    s.alpha = alpha;
    s.added_photons = m;
    return s;
}

FieldSpec FieldSpec::cat(Complex alpha, FieldKind which) {
    cat_phase(which);  // validates
    FieldSpec s;
    s.kind = which;
    s.alpha = alpha;
    return s;
}

FieldSpec FieldSpec::squeezed_vacuum(Complex xi) {
    FieldSpec s;
    s.kind = FieldKind::SqueezedVacuum;
    s.xi = xi;
    return s;
}

FieldSpec FieldSpec::number_state(int n) {
    FieldSpec s;
    s.kind = FieldKind::Fock;
    s.fock_n = n;
    return s;
}

double FockAmplitudes::norm_sq() const {
    double acc = 0.0;
    for (const Complex& c : coeffs) acc += std::norm(c);
    return acc;
}

double FockAmplitudes::mean_n() const {
    double acc = 0.0;
    for (int n = 0; n < size(); ++n) acc += n * std::norm(coeffs[static_cast<size_t>(n)]);
    return acc;
}

FockAmplitudes coherent_amplitudes(Complex alpha, int cutoff) {
    require_cutoff(cutoff);
    std::vector<Complex> coeffs(static_cast<size_t>(cutoff) + 1);
    for (int n = 0; n <= cutoff; ++n) coeffs[static_cast<size_t>(n)] = coherent_coeff(alpha, n);
    return finalize(std::move(coeffs));
}

FockAmplitudes pacs_amplitudes(Complex alpha, int m, int cutoff) {
    if (m < 0) throw std::invalid_argument("pacs_amplitudes: m must be >= 0");
    if (cutoff < m)
        throw std::invalid_argument("pacs_amplitudes: cutoff < m truncates the entire support");
    if (m == 0) return coherent_amplitudes(alpha, cutoff);

    double a = std::abs(alpha);
    std::vector<Complex> coeffs(static_cast<size_t>(cutoff) + 1, Complex(0.0));
    if (a == 0.0) {
        coeffs[static_cast<size_t>(m)] = 1.0;  // (a^dag)^m |0> is the number state |m>
    } else {
        double log_norm = log_pacs_norm_sq(m, a * a);
        double phi = std::arg(alpha);
        for (int n = m; n <= cutoff; ++n) {
            double log_mag = -0.5 * a * a + (n - m) * std::log(a) + 0.5 * log_factorial(n) -
                             log_factorial(n - m) - 0.5 * log_norm;
            coeffs[static_cast<size_t>(n)] = polar_amplitude(log_mag, (n - m) * phi);
        }
    }
    return finalize(std::move(coeffs));
}

FockAmplitudes cat_amplitudes(Complex alpha, FieldKind kind, int cutoff) {
    require_cutoff(cutoff);
    double phi = cat_phase(kind);
    if (kind == FieldKind::OddCat && alpha == Complex(0.0))
        throw std::domain_error("cat_amplitudes: odd cat is undefined at alpha = 0");

    // N(|alpha> + e^{i phi} |-alpha>); overlap <alpha|-alpha> = e^{-2|alpha|^2}.
    double a2 = std::norm(alpha);
    double norm_sq = 2.0 + 2.0 * std::cos(phi) * std::exp(-2.0 * a2);
    Complex phase_factor = std::polar(1.0, phi);
    std::vector<Complex> coeffs(static_cast<size_t>(cutoff) + 1, Complex(0.0));
    for (int n = 0; n <= cutoff; ++n) {
        // Exact parity zeros for the even/odd cats.
        double parity = (n % 2 == 0) ? 1.0 : -1.0;
        if (kind == FieldKind::EvenCat && n % 2 == 1) continue;
        if (kind == FieldKind::OddCat && n % 2 == 0) continue;
        Complex mix = Complex(1.0) + phase_factor * parity;
        coeffs[static_cast<size_t>(n)] = coherent_coeff(alpha, n) * mix / std::sqrt(norm_sq);
    }
    return finalize(std::move(coeffs));
}

FockAmplitudes squeezed_vacuum_amplitudes(Complex xi, int cutoff) {
    require_cutoff(cutoff);
    double r = std::abs(xi);
    std::vector<Complex> coeffs(static_cast<size_t>(cutoff) + 1, Complex(0.0));
    if (r == 0.0) {
        coeffs[0] = 1.0;
        return finalize(std::move(coeffs));
    }
    double phi = std::arg(xi);
    double log_cosh = std::log(std::cosh(r));
    double log_tanh = std::log(std::tanh(r));
    for (int k = 0; 2 * k <= cutoff; ++k) {
        // q_{2k} = cosh(r)^{-1/2} (-e^{i phi} tanh r)^k sqrt((2k)!) / (2^k k!)
        double log_mag = -0.5 * log_cosh + k * log_tanh + 0.5 * log_factorial(2 * k) -
                         k * std::log(2.0) - log_factorial(k);
        coeffs[static_cast<size_t>(2 * k)] = polar_amplitude(log_mag, k * (phi + kPi));
    }
    return finalize(std::move(coeffs));
}

FockAmplitudes fock_state_amplitudes(int n, int cutoff) {
    if (n < 0) throw std::invalid_argument("fock_state_amplitudes: n must be >= 0");
    if (cutoff < n)
        throw std::invalid_argument("fock_state_amplitudes: cutoff < n truncates the state");
    std::vector<Complex> coeffs(static_cast<size_t>(cutoff) + 1, Complex(0.0));
    coeffs[static_cast<size_t>(n)] = 1.0;
    return finalize(std::move(coeffs));
}

FockAmplitudes build_amplitudes(const FieldSpec& spec, int cutoff) {
    switch (spec.kind) {
        case FieldKind::Coherent: return coherent_amplitudes(spec.alpha, cutoff);
        case FieldKind::PhotonAdded: return pacs_amplitudes(spec.alpha, spec.added_photons, cutoff);
        case FieldKind::EvenCat:
        case FieldKind::OddCat:
        case FieldKind::YurkeStoler: return cat_amplitudes(spec.alpha, spec.kind, cutoff);
        case FieldKind::SqueezedVacuum: return squeezed_vacuum_amplitudes(spec.xi, cutoff);
        case FieldKind::Fock: return fock_state_amplitudes(spec.fock_n, cutoff);
    }
    throw std::logic_error("build_amplitudes: unknown field kind");
}

int choose_cutoff(const FieldSpec& spec, double epsilon, int ceiling) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("choose_cutoff: epsilon must lie in (0, 1)");
    if (ceiling < 0) throw std::invalid_argument("choose_cutoff: ceiling must be >= 0");

    if (spec.kind == FieldKind::Fock) {
        if (spec.fock_n > ceiling)
            throw std::runtime_error("choose_cutoff: Fock state exceeds the cutoff ceiling");
        return spec.fock_n;
    }

    FockAmplitudes at_ceiling = build_amplitudes(spec, ceiling);
    if (at_ceiling.tail_mass > epsilon)
        throw std::runtime_error(
            "choose_cutoff: tail mass " + std::to_string(at_ceiling.tail_mass) +
            " above ceiling " + std::to_string(ceiling) + " exceeds epsilon");

    // Probabilities of the exact state: undo the window renormalization.
    double window = 1.0 - at_ceiling.tail_mass;
    double tail = at_ceiling.tail_mass;
    int cut = ceiling;
    for (int n = ceiling; n >= 1; --n) {
        double p = std::norm(at_ceiling.coeffs[static_cast<size_t>(n)]) * window;
        if (tail + p > epsilon) break;
        tail += p;
        cut = n - 1;
    }
    return cut;
}

}  // namespace lambdajc::fock
