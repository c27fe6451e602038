#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lambdajc/analysis.hpp"
#include "test_util.hpp"

using namespace lambdajc;
using analysis::AnalysisOptions;
using analysis::TimeSeries;
using fock::FieldSpec;

namespace {

TimeSeries synthetic(double t0, double t1, int count, double (*f)(double)) {
    TimeSeries s;
    s.times = analysis::make_time_grid(t0, t1, count);
    for (double t : s.times) s.values.push_back(f(t));
    return s;
}

}  // namespace

TEST_CASE("a constant series is one interval covering the full range") {
    auto s = synthetic(0.0, 50.0, 500, [](double) { return 3.5; });
    auto intervals = analysis::detect_collapses(s, 5.0, 0.15);
    REQUIRE(intervals.size() == 1);
    CHECK(intervals[0].t_start == s.times.front());
    CHECK(intervals[0].t_end == s.times.back());
    CHECK(intervals[0].level == doctest::Approx(3.5));
    CHECK(intervals[0].score <= 0.15);
}

TEST_CASE("a pure sinusoid has no collapse intervals") {
    auto s = synthetic(0.0, 50.0, 1000, [](double t) { return std::sin(t); });
    CHECK(analysis::detect_collapses(s, 5.0, 0.1).empty());
}

TEST_CASE("a flat stretch inside an oscillation is found with correct bounds") {
    auto s = synthetic(0.0, 60.0, 1200, [](double t) {
        return (t >= 20.0 && t <= 35.0) ? 0.0 : std::sin(3.0 * t);
    });
    auto intervals = analysis::detect_collapses(s, 5.0, 0.15);
    REQUIRE(intervals.size() == 1);
    CHECK(intervals[0].t_start == doctest::Approx(20.0).epsilon(0.02));
    CHECK(intervals[0].t_end == doctest::Approx(35.0).epsilon(0.02));
    CHECK(intervals[0].score <= 0.15);
}

TEST_CASE("detection is invariant under affine rescaling of the values") {
    auto s = synthetic(0.0, 60.0, 1200, [](double t) {
        return (t >= 20.0 && t <= 35.0) ? 0.2 : std::sin(3.0 * t);
    });
    TimeSeries scaled = s;
    for (double& v : scaled.values) v = -41.0 * v + 7.3;
    auto a = analysis::detect_collapses(s, 5.0, 0.15);
    auto b = analysis::detect_collapses(scaled, 5.0, 0.15);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t_start == b[i].t_start);
        CHECK(a[i].t_end == b[i].t_end);
    }
}

TEST_CASE("detector rejects bad inputs") {
    auto s = synthetic(0.0, 10.0, 30, [](double t) { return t; });
    CHECK_THROWS_AS(analysis::detect_collapses(s, 1.0, 0.15), std::invalid_argument);  // < 10 samples
    CHECK_THROWS_AS(analysis::detect_collapses(s, 20.0, 0.15), std::invalid_argument);  // window > span
    CHECK_THROWS_AS(analysis::detect_collapses(s, 5.0, 1.5), std::invalid_argument);
    TimeSeries broken = s;
    broken.values.pop_back();
    CHECK_THROWS_AS(analysis::detect_collapses(broken, 5.0, 0.15), std::invalid_argument);
}

TEST_CASE("probe-only mean photon series collapses to about |alpha1|^2 - 1/2") {
    AnalysisOptions opts;
    opts.threads = 2;
    ModelParams params;  // resonant, no Kerr, constant coupling
    auto times = analysis::make_time_grid(0.0, 40.0, 801);
    auto series = analysis::mean_photon_series(FieldSpec::coherent(std::sqrt(10.0)),
                                               FieldSpec::coherent(0.0), params, times, opts);
    auto first = analysis::first_collapse(series, 5.0, 0.15);
    REQUIRE(first.has_value());
    CHECK(first->t_start < 3.0);
    CHECK(first->t_end > 12.0);
    CHECK(first->level == doctest::Approx(9.5).epsilon(0.01));
}

TEST_CASE("svne series starts at zero entanglement") {
    AnalysisOptions opts;
    ModelParams params;
    params.chi1 = params.chi2 = 2.0;
    auto series = analysis::svne_series(FieldSpec::photon_added(2.0, 2),
                                        FieldSpec::coherent(1.0), params, {0.0, 0.5, 1.0}, opts);
    CHECK(series.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(series.values[2] > 0.0);
}

TEST_CASE("series evaluation is deterministic across thread counts") {
    ModelParams params;
    params.chi1 = 1.0;
    auto times = analysis::make_time_grid(0.0, 10.0, 40);
    AnalysisOptions one;
    one.threads = 1;
    AnalysisOptions four;
    four.threads = 4;
    auto a = analysis::svne_series(FieldSpec::coherent(2.0), FieldSpec::coherent(1.5), params,
                                   times, one);
    auto b = analysis::svne_series(FieldSpec::coherent(2.0), FieldSpec::coherent(1.5), params,
                                   times, four);
    for (size_t i = 0; i < times.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("auto-selected EIT instant lies inside every probed collapse window") {
    AnalysisOptions opts;
    opts.threads = 2;
    ModelParams params;
    double t_star = analysis::select_eit_time(FieldSpec::coherent(std::sqrt(10.0)), params,
                                              -10.0, 10.0, opts);
    CHECK(t_star > 3.0);
    CHECK(t_star < 14.0);
}

TEST_CASE("eit spectrum with decoupled fields is exactly constant") {
    AnalysisOptions opts;
    ModelParams params;
    params.lambda1 = 0.0;
    params.lambda2 = 0.0;
    auto grid = analysis::make_time_grid(-5.0, 5.0, 11);
    auto spec = analysis::eit_spectrum(FieldSpec::coherent(2.0), FieldSpec::coherent(1.0), params,
                                       grid, 7.0, opts);
    for (double v : spec.values) CHECK(v == doctest::Approx(spec.values[0]).epsilon(1e-12));
}

TEST_CASE("eit asymmetry of hand-built spectra") {
    analysis::EitSpectrum spec;
    spec.delta1_grid = {-2.0, -1.0, 0.0, 1.0, 2.0};
    spec.values = {4.0, 1.0, 0.5, 1.0, 4.0};
    CHECK(analysis::eit_asymmetry(spec) == doctest::Approx(0.0));
    spec.values = {4.0, 1.0, 0.5, 3.0, 4.0};
    double odd = 0.5 * (3.0 - 1.0);
    double expect = std::sqrt(2.0 * odd * odd) /
                    std::sqrt(16.0 + 1.0 + 0.25 + 9.0 + 16.0);
    CHECK(analysis::eit_asymmetry(spec) == doctest::Approx(expect).epsilon(1e-12));
    spec.delta1_grid = {-2.0, -1.0, 0.0, 1.0, 3.0};
    CHECK_THROWS_AS(analysis::eit_asymmetry(spec), std::invalid_argument);
}

TEST_CASE("revival spacing recovers the period of a periodic signal") {
    auto s = synthetic(0.0, 100.0, 2000, [](double t) { return std::cos(2.0 * M_PI * t / 23.0); });
    auto spacing = analysis::estimate_revival_spacing(s);
    REQUIRE(spacing.has_value());
    CHECK(*spacing == doctest::Approx(23.0).epsilon(0.01));
}

TEST_CASE("revival spacing declines to answer on featureless input") {
    auto flat = synthetic(0.0, 10.0, 64, [](double) { return 1.0; });
    CHECK_FALSE(analysis::estimate_revival_spacing(flat).has_value());
}

TEST_CASE("kappa sweep emits one summary per deformation value") {
    AnalysisOptions opts;
    opts.threads = 2;
    opts.collapse_window = 2.0;
    ModelParams params;
    params.chi1 = params.chi2 = 1.0;
    auto times = analysis::make_time_grid(0.0, 20.0, 300);
    auto runs = analysis::kappa_sweep(FieldSpec::coherent(1.5), FieldSpec::coherent(1.5), params,
                                      {0.0, 1.0}, times, opts);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].kappa == 0.0);
    CHECK(runs[1].kappa == 1.0);
    for (const auto& run : runs) {
        CHECK(run.series.size() == times.size());
        CHECK(run.series.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

// The photon-added plateau first appears at threshold 0.168 and the
// coherent one at 0.186, so the predicate is stable on a band of about
// +-4% around 0.175.
TEST_CASE("the plateau dichotomy is stable across a 3 percent threshold band") {
    AnalysisOptions opts;
    opts.threads = 2;
    ModelParams strong;
    strong.chi1 = strong.chi2 = 5.0;
    auto times = analysis::make_time_grid(0.0, 100.0, 2000);
    auto pacs = analysis::svne_series(FieldSpec::photon_added(std::sqrt(10.0), 5),
                                      FieldSpec::photon_added(std::sqrt(10.0), 5), strong, times,
                                      opts);
    auto cs = analysis::svne_series(FieldSpec::coherent(std::sqrt(10.0)),
                                    FieldSpec::coherent(std::sqrt(10.0)), strong, times, opts);
    for (double threshold : {0.170, 0.175, 0.180}) {
        CHECK(analysis::has_plateau(analysis::detect_collapses(pacs, 10.0, threshold), 10.0));
        CHECK_FALSE(analysis::has_plateau(analysis::detect_collapses(cs, 10.0, threshold), 10.0));
    }
}
