#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lambdajc/blocks.hpp"
#include "lambdajc/fock.hpp"
#include "lambdajc/model.hpp"

namespace lambdajc::analysis {

struct TimeSeries {
    std::vector<double> times;   // strictly increasing, units of 1/lambda
    std::vector<double> values;
    std::string label;

    void validate() const;
    size_t size() const { return times.size(); }
};

// A time interval over which the series holds at a nearly constant value.
struct CollapseInterval {
    double t_start = 0.0;
    double t_end = 0.0;
    double level = 0.0;  // mean value inside the interval
    double score = 0.0;  // worst in-window std, normalized by the global std

    double length() const { return t_end - t_start; }
};

struct EitSpectrum {
    std::vector<double> delta1_grid;
    std::vector<double> values;  // <N1(t*)> per grid point
    double t_star = 0.0;
    ModelParams params;          // delta1 field holds the grid's base value
    fock::FieldSpec field1;
    fock::FieldSpec field2;
};

// Collapse-detector defaults; both are exposed wherever detection runs.
inline constexpr double kDefaultCollapseWindow = 5.0;
inline constexpr double kDefaultCollapseThreshold = 0.15;

struct AnalysisOptions {
    double cutoff_epsilon = 1e-12;
    int cutoff_ceiling = fock::kDefaultCutoffCeiling;
    int threads = 1;
    double collapse_window = kDefaultCollapseWindow;
    double collapse_threshold = kDefaultCollapseThreshold;
    // grid used when locating the probe's first collapse for EIT
    double eit_window_tmax = 40.0;
    int eit_window_samples = 801;
};

std::vector<double> make_time_grid(double t0, double t1, int count);

// Sliding-window scan: a window is collapsed when its standard deviation is
// <= rel_threshold x the global standard deviation; maximal runs of
// collapsed windows merge into intervals, returned time-ordered.
std::vector<CollapseInterval> detect_collapses(const TimeSeries& series, double window,
                                               double rel_threshold);

std::optional<CollapseInterval> first_collapse(const TimeSeries& series, double window,
                                               double rel_threshold);

bool has_plateau(const std::vector<CollapseInterval>& intervals, double min_length);

// <N1(t)> over `times` for the given initial fields.
TimeSeries mean_photon_series(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                              const ModelParams& params, const std::vector<double>& times,
                              const AnalysisOptions& opts = {});

// Atomic-subsystem von Neumann entropy over `times`.
TimeSeries svne_series(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                       const ModelParams& params, const std::vector<double>& times,
                       const AnalysisOptions& opts = {});

// Midpoint of the intersection of the probe-only (vacuum F2) first-collapse
// intervals at the two detunings delta_lo and delta_hi.
double select_eit_time(const fock::FieldSpec& q_spec, const ModelParams& params,
                       double delta_lo, double delta_hi, const AnalysisOptions& opts = {});

EitSpectrum eit_spectrum(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                         const ModelParams& params, const std::vector<double>& delta1_grid,
                         double t_star, const AnalysisOptions& opts = {});

// || odd part ||_2 / || spectrum ||_2 over a symmetric grid.
double eit_asymmetry(const EitSpectrum& spectrum);

// First nontrivial autocorrelation peak of the mean-removed series.
std::optional<double> estimate_revival_spacing(const TimeSeries& series);

struct KappaRun {
    double kappa = 0.0;
    TimeSeries series;
    std::vector<CollapseInterval> collapses;
    std::optional<double> revival_spacing;
};

// svne_series for each kappa with the DeformedSU11 coupling, plus per-kappa
// collapse/revival summaries.
std::vector<KappaRun> kappa_sweep(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                                  const ModelParams& params, const std::vector<double>& kappa_list,
                                  const std::vector<double>& times,
                                  const AnalysisOptions& opts = {});

}  // namespace lambdajc::analysis
