#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lambdajc::fock {

using Complex = std::complex<double>;

enum class FieldKind {
    Coherent,
    PhotonAdded,
    EvenCat,
    OddCat,
    YurkeStoler,
    SqueezedVacuum,
    Fock,
};

std::string to_string(FieldKind kind);

// Declarative description of one mode's initial state. Fields that do not
// apply to `kind` are ignored.
struct FieldSpec {
    FieldKind kind = FieldKind::Coherent;
    Complex alpha = 0.0;      // coherent amplitude (all but SqueezedVacuum/Fock)
    int added_photons = 0;    // m, PhotonAdded only
    Complex xi = 0.0;         // squeeze parameter, SqueezedVacuum only
    int fock_n = 0;           // Fock only

    static FieldSpec coherent(Complex alpha);
    static FieldSpec photon_added(Complex alpha, int m);
    static FieldSpec cat(Complex alpha, FieldKind which);
    static FieldSpec squeezed_vacuum(Complex xi);
    static FieldSpec number_state(int n);
};

// Normalized Fock-basis amplitudes over the window [0, cutoff].
// tail_mass is the probability the untruncated state carries beyond the
// window; after construction the window is renormalized to unit norm.
struct FockAmplitudes {
    std::vector<Complex> coeffs;
    int cutoff = 0;
    double tail_mass = 0.0;

    int size() const { return static_cast<int>(coeffs.size()); }
    double norm_sq() const;
    double mean_n() const;
};

FockAmplitudes coherent_amplitudes(Complex alpha, int cutoff);
FockAmplitudes pacs_amplitudes(Complex alpha, int m, int cutoff);
FockAmplitudes cat_amplitudes(Complex alpha, FieldKind kind, int cutoff);
FockAmplitudes squeezed_vacuum_amplitudes(Complex xi, int cutoff);
FockAmplitudes fock_state_amplitudes(int n, int cutoff);

// Builds the amplitudes described by `spec` truncated at `cutoff`.
FockAmplitudes build_amplitudes(const FieldSpec& spec, int cutoff);

inline constexpr int kDefaultCutoffCeiling = 512;

// Smallest cutoff whose truncated tail mass is <= epsilon. Monotone
// nonincreasing in epsilon. Throws if no admissible cutoff exists below
// `ceiling`.
int choose_cutoff(const FieldSpec& spec, double epsilon,
                  int ceiling = kDefaultCutoffCeiling);

}  // namespace lambdajc::fock
