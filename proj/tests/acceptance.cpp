// Acceptance suite: one test per release criterion, each printing a
// [PASS]/[FAIL] line with the measured quantities. Two kappa-cascade
// subclauses are expected to fail against the verified dynamics; see the
// notes next to those tests.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "lambdajc/analysis.hpp"
#include "lambdajc/observables.hpp"
#include "lambdajc/oracle.hpp"
#include "lambdajc/parallel.hpp"
#include "test_util.hpp"

using namespace lambdajc;
using analysis::AnalysisOptions;
using fock::FieldKind;
using fock::FieldSpec;
using Complex = std::complex<double>;

namespace {

constexpr int kThreads = 2;
constexpr double kSvneWindow = 10.0;
constexpr double kSvneThreshold = 0.175;
constexpr double kPlateauLength = 10.0;

void report(const char* name, bool ok, const char* fmt = nullptr, ...) {
    std::printf("[%s] %s", ok ? "PASS" : "FAIL", name);
    if (fmt) {
        std::printf(" — ");
        va_list args;
        va_start(args, fmt);
        std::vprintf(fmt, args);
        va_end(args);
    }
    std::printf("\n");
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

fock::FockAmplitudes random_field(testutil::Rng& rng, int cutoff) {
    switch (rng.uniform_int(0, 5)) {
        case 0: return fock::coherent_amplitudes(2.0 * rng.unit_disc(), cutoff);
        case 1:
            return fock::pacs_amplitudes(1.5 * rng.unit_disc(),
                                         rng.uniform_int(0, std::min(3, cutoff)), cutoff);
        case 2:
            return fock::cat_amplitudes(1.5 * rng.unit_disc() + Complex(0.5, 0.0),
                                        FieldKind::EvenCat, cutoff);
        case 3:
            return fock::cat_amplitudes(1.5 * rng.unit_disc() + Complex(0.5, 0.0),
                                        FieldKind::YurkeStoler, cutoff);
        case 4: return fock::squeezed_vacuum_amplitudes(0.8 * rng.unit_disc(), cutoff);
        default: return fock::fock_state_amplitudes(rng.uniform_int(0, std::min(4, cutoff)), cutoff);
    }
}

AnalysisOptions svne_options(double epsilon = 1e-12) {
    AnalysisOptions opts;
    opts.threads = kThreads;
    opts.cutoff_epsilon = epsilon;
    opts.collapse_window = kSvneWindow;
    opts.collapse_threshold = kSvneThreshold;
    return opts;
}

const std::vector<double>& times100() {
    static std::vector<double> grid = analysis::make_time_grid(0.0, 100.0, 2000);
    return grid;
}

ModelParams strong_kerr() {
    ModelParams p;
    p.chi1 = p.chi2 = 5.0;
    return p;
}

const analysis::TimeSeries& pacs5_svne() {
    static analysis::TimeSeries s =
        analysis::svne_series(FieldSpec::photon_added(std::sqrt(10.0), 5),
                              FieldSpec::photon_added(std::sqrt(10.0), 5), strong_kerr(),
                              times100(), svne_options());
    return s;
}

double longest_interval(const std::vector<analysis::CollapseInterval>& intervals) {
    double longest = 0.0;
    for (const auto& ci : intervals) longest = std::max(longest, ci.length());
    return longest;
}

struct EitFixture {
    double t_star;
    std::vector<double> grid;
    analysis::EitSpectrum coupled;    // |alpha2|^2 = 18
    analysis::EitSpectrum uncoupled;  // |alpha2|^2 = 0
};

const EitFixture& eit_fixture() {
    static EitFixture fixture = [] {
        AnalysisOptions opts;
        opts.threads = kThreads;
        ModelParams base;  // delta2 = 0, chi = 0, constant coupling
        FieldSpec probe = FieldSpec::coherent(std::sqrt(10.0));
        EitFixture f;
        f.t_star = analysis::select_eit_time(probe, base, -10.0, 10.0, opts);
        f.grid = analysis::make_time_grid(-10.0, 10.0, 41);
        f.coupled = analysis::eit_spectrum(probe, FieldSpec::coherent(std::sqrt(18.0)), base,
                                           f.grid, f.t_star, opts);
        f.uncoupled = analysis::eit_spectrum(probe, FieldSpec::coherent(0.0), base, f.grid,
                                             f.t_star, opts);
        return f;
    }();
    return fixture;
}

}  // namespace

TEST_CASE("acceptance: oracle equivalence over randomized models") {
    auto start = std::chrono::steady_clock::now();
    testutil::Rng rng(42);
    double worst = 1.0;
    for (int i = 0; i < 100; ++i) {
        ModelParams p = testutil::random_params(rng);
        int c1 = rng.uniform_int(4, 20);
        int c2 = rng.uniform_int(4, 20);
        auto q = random_field(rng, c1);
        auto r = random_field(rng, c2);
        double t = rng.uniform(0.0, 20.0);
        auto tensor = blocks::evolve(q, r, p, t);
        auto closed = oracle::to_global_state(tensor);
        auto numeric =
            oracle::evolve_numeric(oracle::product_state(q, r, c1, c2 + 1), p, t);
        worst = std::min(worst, oracle::fidelity(closed, numeric));
    }
    double elapsed = seconds_since(start);
    bool ok = worst >= 1.0 - 1e-8 && elapsed < 60.0;
    report("oracle equivalence (100 cases, fidelity >= 1 - 1e-8)", ok,
           "max deviation %.3e, %.1f s", 1.0 - worst, elapsed);
    CHECK(worst >= 1.0 - 1e-8);
    CHECK(elapsed < 60.0);
}

TEST_CASE("acceptance: block unitarity and initial conditions") {
    auto start = std::chrono::steady_clock::now();
    testutil::Rng rng(1234);
    double worst_norm = 0.0, worst_init = 0.0;
    for (int i = 0; i < 10000; ++i) {
        ModelParams p = testutil::random_params(rng);
        int n = rng.uniform_int(1, 30);
        int m = rng.uniform_int(0, 30);
        double t = rng.uniform(0.0, 100.0);
        auto c = blocks::block_coefficients(n, m, t, p);
        worst_norm = std::max(worst_norm, std::abs(c.norm_sq() - 1.0));
        auto c0 = blocks::block_coefficients(n, m, 0.0, p);
        worst_init = std::max({worst_init, std::abs(c0.a - 1.0), std::abs(c0.b), std::abs(c0.c)});
    }
    double elapsed = seconds_since(start);
    bool ok = worst_norm < 1e-10 && worst_init < 1e-10 && elapsed < 5.0;
    report("block unitarity + (A,B,C)(0) = (1,0,0) over 10^4 blocks", ok,
           "max |norm-1| %.2e, max init dev %.2e, %.1f s", worst_norm, worst_init, elapsed);
    CHECK(worst_norm < 1e-10);
    CHECK(worst_init < 1e-10);
    CHECK(elapsed < 5.0);
}

TEST_CASE("acceptance: excitation counters are constants of the motion") {
    auto start = std::chrono::steady_clock::now();
    ModelParams p;
    p.delta1 = 0.7;
    p.delta2 = -0.4;
    p.chi1 = 1.5;
    p.chi2 = 0.8;
    p.coupling_form = CouplingForm::DeformedSU11;
    p.kappa1 = 0.3;
    p.kappa2 = 0.6;
    auto q = fock::build_amplitudes(FieldSpec::photon_added(std::sqrt(6.0), 2),
                                    fock::choose_cutoff(FieldSpec::photon_added(std::sqrt(6.0), 2), 1e-12));
    auto r = fock::build_amplitudes(FieldSpec::coherent(std::sqrt(5.0)),
                                    fock::choose_cutoff(FieldSpec::coherent(std::sqrt(5.0)), 1e-12));
    auto times = analysis::make_time_grid(0.0, 50.0, 500);
    double c1_ref = 0.0, c2_ref = 0.0, drift1 = 0.0, drift2 = 0.0;
    std::vector<double> d1(times.size()), d2(times.size());
    parallel_for(times.size(), kThreads, [&](size_t i) {
        auto tensor = blocks::evolve(q, r, p, times[i]);
        auto pops = obs::atom_populations(tensor);
        d1[i] = obs::mean_photon(tensor, 1) - pops.p1;
        d2[i] = obs::mean_photon(tensor, 2) - pops.p2;
    });
    c1_ref = d1[0];
    c2_ref = d2[0];
    for (size_t i = 1; i < times.size(); ++i) {
        drift1 = std::max(drift1, std::abs(d1[i] - c1_ref));
        drift2 = std::max(drift2, std::abs(d2[i] - c2_ref));
    }
    double elapsed = seconds_since(start);
    bool ok = drift1 < 1e-8 && drift2 < 1e-8 && elapsed < 30.0;
    report("conservation of <N1>-<s11> and <N2>-<s22> along 500 points", ok,
           "max drift %.2e / %.2e, %.1f s", drift1, drift2, elapsed);
    CHECK(drift1 < 1e-8);
    CHECK(drift2 < 1e-8);
    CHECK(elapsed < 30.0);
}

TEST_CASE("acceptance: Vieta and residue identities on 10^4 blocks") {
    testutil::Rng rng(99);
    double worst_vieta = 0.0, worst_residue = 0.0;
    int checked = 0;
    while (checked < 10000) {
        ModelParams p = testutil::random_params(rng);
        int n = rng.uniform_int(1, 30);
        int m = rng.uniform_int(1, 30);
        auto spec = blocks::block_spectrum(n, m, p);
        if (spec.branch != blocks::Branch::General) continue;
        ++checked;
        auto x = blocks::cubic_coefficients(spec.aux, p);
        double s1 = spec.mu[0] + spec.mu[1] + spec.mu[2];
        double s2 = spec.mu[0] * spec.mu[1] + spec.mu[1] * spec.mu[2] + spec.mu[0] * spec.mu[2];
        double s3 = spec.mu[0] * spec.mu[1] * spec.mu[2];
        worst_vieta = std::max({worst_vieta,
                                std::abs(s1 + x.x1) / std::max(1.0, std::abs(x.x1)),
                                std::abs(s2 - x.x2) / std::max(1.0, std::abs(x.x2)),
                                std::abs(s3 + x.x3) / std::max(1.0, std::abs(x.x3))});
        double f1f2 = spec.aux.f1 * spec.aux.f2;
        double r0 = spec.b[0] + spec.b[1] + spec.b[2];
        double r1 = spec.b[0] * spec.mu[0] + spec.b[1] * spec.mu[1] + spec.b[2] * spec.mu[2];
        double r2 = spec.b[0] * spec.mu[0] * spec.mu[0] + spec.b[1] * spec.mu[1] * spec.mu[1] +
                    spec.b[2] * spec.mu[2] * spec.mu[2];
        double scale = std::max(1.0, std::abs(f1f2));
        worst_residue = std::max({worst_residue, std::abs(r0) / scale, std::abs(r1) / scale,
                                  std::abs(r2 - f1f2) / scale});
    }
    bool ok = worst_vieta < 1e-9 && worst_residue < 1e-9;
    report("Vieta + residue identities to 1e-9 relative on 10^4 blocks", ok,
           "worst Vieta %.2e, worst residue %.2e", worst_vieta, worst_residue);
    CHECK(worst_vieta < 1e-9);
    CHECK(worst_residue < 1e-9);
}

TEST_CASE("acceptance: EIT transparency window at the auto-selected instant") {
    auto start = std::chrono::steady_clock::now();
    const EitFixture& f = eit_fixture();
    size_t mid = f.grid.size() / 2;
    REQUIRE(f.grid[mid] == 0.0);
    double center_coupled = f.coupled.values[mid];
    double center_uncoupled = f.uncoupled.values[mid];
    bool exceeds = center_coupled > center_uncoupled;
    bool local_max = center_coupled > f.coupled.values[mid - 1] &&
                     center_coupled > f.coupled.values[mid + 1];
    double asym = analysis::eit_asymmetry(f.coupled);
    double elapsed = seconds_since(start);
    bool ok = exceeds && local_max && asym < 1e-3 && elapsed < 600.0;
    report("EIT window: center above uncoupled run, local max, symmetric", ok,
           "t* %.3f, N(0) %.4f vs %.4f, odd-part %.1e, %.1f s", f.t_star, center_coupled,
           center_uncoupled, asym, elapsed);
    CHECK(exceeds);
    CHECK(local_max);
    CHECK(asym < 1e-3);
    CHECK(elapsed < 600.0);
}

TEST_CASE("acceptance: spectrum asymmetry grows with chi2 and with delta2") {
    AnalysisOptions opts;
    opts.threads = kThreads;
    const EitFixture& f = eit_fixture();
    FieldSpec probe = FieldSpec::coherent(std::sqrt(10.0));
    FieldSpec pump = FieldSpec::coherent(std::sqrt(18.0));

    std::vector<double> chi_asym, delta_asym;
    for (double chi2 : {0.001, 0.01, 0.1}) {
        ModelParams p;
        p.chi2 = chi2;
        chi_asym.push_back(
            analysis::eit_asymmetry(analysis::eit_spectrum(probe, pump, p, f.grid, f.t_star, opts)));
    }
    for (double d2 : {0.1, 0.25, 0.5}) {
        ModelParams p;
        p.delta2 = d2;
        delta_asym.push_back(
            analysis::eit_asymmetry(analysis::eit_spectrum(probe, pump, p, f.grid, f.t_star, opts)));
    }
    bool chi_mono = chi_asym[0] <= chi_asym[1] && chi_asym[1] <= chi_asym[2];
    bool delta_mono = delta_asym[0] <= delta_asym[1] && delta_asym[1] <= delta_asym[2];
    bool ok = chi_mono && delta_mono;
    report("asymmetry monotone in chi2 and delta2", ok,
           "chi2: %.2e %.2e %.2e; delta2: %.2e %.2e %.2e", chi_asym[0], chi_asym[1], chi_asym[2],
           delta_asym[0], delta_asym[1], delta_asym[2]);
    CHECK(chi_mono);
    CHECK(delta_mono);
}

TEST_CASE("acceptance: deformed coupling keeps symmetry and flattens the window") {
    AnalysisOptions opts;
    opts.threads = kThreads;
    const EitFixture& f = eit_fixture();  // t* from the kappa = 0 probe collapse
    FieldSpec probe = FieldSpec::coherent(std::sqrt(10.0));
    FieldSpec pump = FieldSpec::coherent(std::sqrt(18.0));
    auto wide = analysis::make_time_grid(-25.0, 25.0, 51);

    std::vector<double> asyms, contrasts;
    for (double kappa : {0.1, 0.5, 1.0}) {
        ModelParams p;
        p.coupling_form = CouplingForm::DeformedSU11;
        p.kappa1 = p.kappa2 = kappa;
        auto spec = analysis::eit_spectrum(probe, pump, p, wide, f.t_star, opts);
        asyms.push_back(analysis::eit_asymmetry(spec));
        size_t mid = wide.size() / 2;
        double edge = 0.5 * (spec.values.front() + spec.values.back());
        contrasts.push_back(std::abs(spec.values[mid] - edge));
    }
    bool symmetric = asyms[0] < 1e-3 && asyms[1] < 1e-3 && asyms[2] < 1e-3;
    bool weakening = contrasts[0] > contrasts[1] && contrasts[1] > contrasts[2];
    bool ok = symmetric && weakening;
    report("kappa sweep: symmetric spectra with weakening center feature", ok,
           "asym %.1e %.1e %.1e; |center-edge| %.3f %.3f %.3f", asyms[0], asyms[1], asyms[2],
           contrasts[0], contrasts[1], contrasts[2]);
    CHECK(symmetric);
    CHECK(weakening);
}

TEST_CASE("acceptance: entanglement collapse dichotomy (photon-added vs coherent)") {
    auto pacs5 = analysis::detect_collapses(pacs5_svne(), kSvneWindow, kSvneThreshold);
    auto pacs10_series =
        analysis::svne_series(FieldSpec::photon_added(std::sqrt(10.0), 10),
                              FieldSpec::photon_added(std::sqrt(10.0), 10), strong_kerr(),
                              times100(), svne_options());
    auto pacs10 = analysis::detect_collapses(pacs10_series, kSvneWindow, kSvneThreshold);
    auto cs_series = analysis::svne_series(FieldSpec::coherent(std::sqrt(10.0)),
                                           FieldSpec::coherent(std::sqrt(10.0)), strong_kerr(),
                                           times100(), svne_options());
    auto cs = analysis::detect_collapses(cs_series, kSvneWindow, kSvneThreshold);

    bool pacs5_plateau = analysis::has_plateau(pacs5, kPlateauLength);
    bool cs_plateau = analysis::has_plateau(cs, kPlateauLength);
    bool m10_at_least = longest_interval(pacs10) >= longest_interval(pacs5);
    bool ok = pacs5_plateau && !cs_plateau && m10_at_least;
    report("SVNE plateau for PACS m=5/m=10, none for CS", ok,
           "longest: m5 %.1f, m10 %.1f, cs %.1f (plateau >= %.0f)", longest_interval(pacs5),
           longest_interval(pacs10), longest_interval(cs), kPlateauLength);
    CHECK(pacs5_plateau);
    CHECK_FALSE(cs_plateau);
    CHECK(m10_at_least);
}

TEST_CASE("acceptance: squeezed-vacuum inputs show no plateau") {
    auto opts = svne_options(1e-8);  // heavy squeezed tails
    auto grid = analysis::make_time_grid(0.0, 100.0, 1000);
    auto sq = FieldSpec::squeezed_vacuum(2.0);
    auto sq_pacs = analysis::svne_series(sq, FieldSpec::photon_added(std::sqrt(10.0), 5),
                                         strong_kerr(), grid, opts);
    auto sq_sq = analysis::svne_series(sq, sq, strong_kerr(), grid, opts);
    auto a = analysis::detect_collapses(sq_pacs, kSvneWindow, kSvneThreshold);
    auto b = analysis::detect_collapses(sq_sq, kSvneWindow, kSvneThreshold);
    bool ok = !analysis::has_plateau(a, kPlateauLength) && !analysis::has_plateau(b, kPlateauLength);
    report("no SVNE plateau for squeezed x PACS and squeezed x squeezed", ok,
           "longest: %.1f and %.1f", longest_interval(a), longest_interval(b));
    CHECK_FALSE(analysis::has_plateau(a, kPlateauLength));
    CHECK_FALSE(analysis::has_plateau(b, kPlateauLength));
}

TEST_CASE("acceptance: kappa cascade, kappa = 0 keeps the plateau") {
    auto runs = analysis::kappa_sweep(FieldSpec::photon_added(std::sqrt(10.0), 5),
                                      FieldSpec::photon_added(std::sqrt(10.0), 5), strong_kerr(),
                                      {0.0}, times100(), svne_options());
    bool ok = analysis::has_plateau(runs[0].collapses, kPlateauLength);
    report("cascade kappa = 0: plateau present", ok, "longest %.1f",
           longest_interval(runs[0].collapses));
    CHECK(ok);
}

TEST_CASE("acceptance: kappa cascade, kappa = 0.03 shows repeated cycles") {
    auto runs = analysis::kappa_sweep(FieldSpec::photon_added(std::sqrt(10.0), 5),
                                      FieldSpec::photon_added(std::sqrt(10.0), 5), strong_kerr(),
                                      {0.03}, times100(), svne_options());
    int cycles = 0;
    if (runs[0].revival_spacing && *runs[0].revival_spacing > 0.0)
        cycles = static_cast<int>(100.0 / *runs[0].revival_spacing);
    bool ok = cycles >= 2;
    report("cascade kappa = 0.03: >= 2 collapse/revival cycles", ok,
           "revival spacing %.1f -> %d cycles", runs[0].revival_spacing.value_or(0.0), cycles);
    CHECK(ok);
}

// The verified dynamics contradicts this clause: at kappa = 1 the entropy
// dephases into quiet stretches (an 18.9-long interval at the dichotomy
// detector settings), and any threshold low enough to suppress it also
// erases the PACS plateau. Kept as specified; expected to fail.
TEST_CASE("acceptance: kappa cascade, kappa = 1 has no plateau") {
    auto runs = analysis::kappa_sweep(FieldSpec::photon_added(std::sqrt(10.0), 5),
                                      FieldSpec::photon_added(std::sqrt(10.0), 5), strong_kerr(),
                                      {1.0}, times100(), svne_options());
    bool ok = !analysis::has_plateau(runs[0].collapses, kPlateauLength);
    report("cascade kappa = 1: no plateau", ok, "longest %.1f",
           longest_interval(runs[0].collapses));
    CHECK(ok);
}

// Also contradicted by the verified dynamics: with f(N) = sqrt(N) the
// two-photon frequencies disperse so strongly that the entropy freezes at
// a steady value; this is the flattest series of the whole family, and the
// brute-force propagator reproduces it to 1e-12. Kept as specified;
// expected to fail.
TEST_CASE("acceptance: sqrt(N) coupling at chi/lambda = 10 has no plateau") {
    ModelParams p;
    p.chi1 = p.chi2 = 10.0;
    p.coupling_form = CouplingForm::SqrtN;
    auto series = analysis::svne_series(FieldSpec::photon_added(std::sqrt(10.0), 5),
                                        FieldSpec::photon_added(std::sqrt(10.0), 5), p,
                                        times100(), svne_options());
    auto intervals = analysis::detect_collapses(series, kSvneWindow, kSvneThreshold);
    bool ok = !analysis::has_plateau(intervals, kPlateauLength);
    report("sqrt(N) coupling, chi/lambda = 10: no plateau", ok, "longest %.1f",
           longest_interval(intervals));
    CHECK(ok);
}

TEST_CASE("acceptance: Fock-constructor example rows") {
    auto start = std::chrono::steady_clock::now();
    bool all = true;
    auto expect = [&](bool cond) { all = all && cond; };

    auto vac = fock::coherent_amplitudes(0.0, 10);
    expect(vac.coeffs[0] == Complex(1.0));

    auto cs = fock::coherent_amplitudes(std::sqrt(10.0), 60);
    expect(std::abs(std::norm(cs.coeffs[10]) * (1.0 - cs.tail_mass) - 0.125110035721134) < 1e-12);
    expect(cs.tail_mass < 1e-12);

    auto pacs0 = fock::pacs_amplitudes(1.3, 0, 40);
    auto cs13 = fock::coherent_amplitudes(1.3, 40);
    double dmax = 0.0;
    for (int n = 0; n <= 40; ++n) dmax = std::max(dmax, std::abs(pacs0.coeffs[n] - cs13.coeffs[n]));
    expect(dmax < 1e-14);

    double pacs_norm = 0.0;  // squared norm of (a^dag)|alpha>, |alpha|^2 = 10
    for (int n = 1; n <= 200; ++n)
        pacs_norm += std::exp(-10.0 + (n - 1) * std::log(10.0) + std::lgamma(n + 1.0) -
                              2.0 * std::lgamma(static_cast<double>(n)));
    expect(std::abs(pacs_norm - 11.0) < 1e-9);

    auto pacs5 = fock::pacs_amplitudes(std::sqrt(10.0), 5, 70);
    for (int n = 0; n < 5; ++n) expect(pacs5.coeffs[n] == Complex(0.0));

    auto even = fock::cat_amplitudes(std::sqrt(10.0), FieldKind::EvenCat, 50);
    for (int n = 1; n <= 50; n += 2) expect(even.coeffs[n] == Complex(0.0));

    auto ys = fock::cat_amplitudes(std::sqrt(10.0), FieldKind::YurkeStoler, 60);
    auto csys = fock::coherent_amplitudes(std::sqrt(10.0), 60);
    for (int n = 0; n <= 60; ++n)
        expect(std::abs(std::norm(ys.coeffs[n]) - std::norm(csys.coeffs[n])) < 1e-14);

    auto odd = fock::cat_amplitudes(1e-3, FieldKind::OddCat, 20);
    expect(std::norm(odd.coeffs[1]) > 0.999999);

    auto sq0 = fock::squeezed_vacuum_amplitudes(0.0, 12);
    expect(sq0.coeffs[0] == Complex(1.0));
    auto sq = fock::squeezed_vacuum_amplitudes(Complex(0.7, 0.4), 41);
    for (int n = 1; n <= 41; n += 2) expect(sq.coeffs[n] == Complex(0.0));
    auto sq2 = fock::squeezed_vacuum_amplitudes(2.0, 700);
    expect(std::abs(sq2.mean_n() - std::sinh(2.0) * std::sinh(2.0)) < 1e-8);

    int cut = fock::choose_cutoff(FieldSpec::coherent(std::sqrt(10.0)), 1e-12);
    expect(cut >= 35 && cut <= 60);
    expect(fock::choose_cutoff(FieldSpec::number_state(7), 1e-6) == 7);
    expect(fock::choose_cutoff(FieldSpec::squeezed_vacuum(2.0), 1e-10, 1024) >
           fock::choose_cutoff(FieldSpec::coherent(std::sqrt(13.0)), 1e-10));

    double elapsed = seconds_since(start);
    bool ok = all && elapsed < 1.0;
    report("Fock-constructor example rows at stated tolerances", ok, "%.2f s", elapsed);
    CHECK(all);
    CHECK(elapsed < 1.0);
}
