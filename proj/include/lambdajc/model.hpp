#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace lambdajc {

// Functional form of the intensity-dependent coupling f(N).
enum class CouplingForm {
    Constant,      // f(N) = 1
    SqrtN,         // f(N) = N^{1/2}  (Buck-Sukumar)
    DeformedSU11,  // f(N) = (1 + kappa N)^{1/2},  0 <= kappa <= 1
};

inline std::string to_string(CouplingForm form) {
    switch (form) {
        case CouplingForm::Constant: return "constant";
        case CouplingForm::SqrtN: return "sqrt_n";
        case CouplingForm::DeformedSU11: return "deformed_su11";
    }
    return "?";
}

// Interaction-picture parameters of the Lambda atom + two-mode model.
// Detunings, couplings and Kerr strengths are in units of the coupling
// lambda; time is in units of 1/lambda (lambda1 = lambda2 = 1 by default).
struct ModelParams {
    double delta1 = 0.0;   // probe detuning
    double delta2 = 0.0;   // coupling-field detuning
    double lambda1 = 1.0;  // |1><3| transition coupling strength
    double lambda2 = 1.0;  // |2><3| transition coupling strength
    double chi1 = 0.0;     // Kerr strength of mode F1
    double chi2 = 0.0;     // Kerr strength of mode F2
    CouplingForm coupling_form = CouplingForm::Constant;
    double kappa1 = 0.0;   // deformation parameter, DeformedSU11 only
    double kappa2 = 0.0;

    double kappa(int mode) const { return mode == 1 ? kappa1 : kappa2; }

    void validate() const {
        if (chi1 < 0.0 || chi2 < 0.0)
            throw std::invalid_argument("ModelParams: Kerr strengths must be >= 0");
        if (coupling_form == CouplingForm::DeformedSU11 &&
            (kappa1 < 0.0 || kappa1 > 1.0 || kappa2 < 0.0 || kappa2 > 1.0))
            throw std::invalid_argument("ModelParams: kappa must lie in [0, 1]");
    }
};

// f(n) for the given mode. Evaluated at the photon number of the state the
// annihilation operator acts on, so f1 = lambda1 sqrt(n) f(n) and
// f2 = lambda2 sqrt(m+1) f(m+1).
inline double intensity_factor(int n, const ModelParams& params, int mode) {
    if (n < 0) throw std::invalid_argument("intensity_factor: n must be >= 0");
    switch (params.coupling_form) {
        case CouplingForm::Constant: return 1.0;
        case CouplingForm::SqrtN: return std::sqrt(static_cast<double>(n));
        case CouplingForm::DeformedSU11:
            return std::sqrt(1.0 + params.kappa(mode) * static_cast<double>(n));
    }
    return 1.0;
}

}  // namespace lambdajc
