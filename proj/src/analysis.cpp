#include "lambdajc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lambdajc/observables.hpp"
#include "lambdajc/parallel.hpp"

namespace lambdajc::analysis {

namespace {

double stddev(const std::vector<double>& v, size_t begin, size_t end) {
    size_t n = end - begin;
    double mean = 0.0;
    for (size_t i = begin; i < end; ++i) mean += v[i];
    mean /= static_cast<double>(n);
    double acc = 0.0;
    for (size_t i = begin; i < end; ++i) acc += (v[i] - mean) * (v[i] - mean);
    return std::sqrt(acc / static_cast<double>(n));
}

struct Prepared {
    fock::FockAmplitudes q;
    fock::FockAmplitudes r;
};

Prepared prepare(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                 const AnalysisOptions& opts) {
    Prepared p;
    p.q = fock::build_amplitudes(
        q_spec, fock::choose_cutoff(q_spec, opts.cutoff_epsilon, opts.cutoff_ceiling));
    p.r = fock::build_amplitudes(
        r_spec, fock::choose_cutoff(r_spec, opts.cutoff_epsilon, opts.cutoff_ceiling));
    return p;
}

template <typename Fn>
TimeSeries evaluate_series(const Prepared& p, const ModelParams& params,
                           const std::vector<double>& times, const AnalysisOptions& opts,
                           std::string label, Fn&& observable) {
    TimeSeries series;
    series.times = times;
    series.values.assign(times.size(), 0.0);
    series.label = std::move(label);
    series.validate();
    parallel_for(times.size(), opts.threads, [&](size_t i) {
        blocks::AmplitudeTensor tensor = blocks::evolve(p.q, p.r, params, times[i]);
        series.values[i] = observable(tensor);
    });
    return series;
}

}  // namespace

void TimeSeries::validate() const {
    if (times.size() != values.size())
        throw std::invalid_argument("TimeSeries: times/values length mismatch");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("TimeSeries: times must be strictly increasing");
}

std::vector<double> make_time_grid(double t0, double t1, int count) {
    if (count < 2 || !(t1 > t0)) throw std::invalid_argument("make_time_grid: bad grid");
    std::vector<double> grid(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[static_cast<size_t>(i)] = t0 + (t1 - t0) * i / (count - 1);
    return grid;
}

std::vector<CollapseInterval> detect_collapses(const TimeSeries& series, double window,
                                               double rel_threshold) {
    series.validate();
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
        throw std::invalid_argument("detect_collapses: rel_threshold must lie in (0, 1)");
    size_t len = series.size();
    if (len < 2) throw std::invalid_argument("detect_collapses: series too short");
    double dt = (series.times.back() - series.times.front()) / static_cast<double>(len - 1);
    size_t w = static_cast<size_t>(std::lround(window / dt)) + 1;
    if (w < 10) throw std::invalid_argument("detect_collapses: window spans fewer than 10 samples");
    if (w > len) throw std::invalid_argument("detect_collapses: series shorter than window");

    double global = stddev(series.values, 0, len);
    double bar = rel_threshold * global;

    std::vector<CollapseInterval> out;
    size_t nwin = len - w + 1;
    size_t run_begin = 0;
    bool in_run = false;
    double run_score = 0.0;
    auto close_run = [&](size_t run_end_window) {
        CollapseInterval ci;
        size_t first = run_begin;
        size_t last = run_end_window + w - 1;  // last sample covered
        ci.t_start = series.times[first];
        ci.t_end = series.times[last];
        double mean = 0.0;
        for (size_t i = first; i <= last; ++i) mean += series.values[i];
        ci.level = mean / static_cast<double>(last - first + 1);
        ci.score = run_score;
        out.push_back(ci);
    };
    for (size_t i = 0; i < nwin; ++i) {
        double sd = stddev(series.values, i, i + w);
        bool collapsed = sd <= bar;
        double score = global > 0.0 ? sd / global : 0.0;
        if (collapsed && !in_run) {
            in_run = true;
            run_begin = i;
            run_score = score;
        } else if (collapsed) {
            run_score = std::max(run_score, score);
        } else if (in_run) {
            close_run(i - 1);
            in_run = false;
        }
    }
    if (in_run) close_run(nwin - 1);
    return out;
}

std::optional<CollapseInterval> first_collapse(const TimeSeries& series, double window,
                                               double rel_threshold) {
    auto intervals = detect_collapses(series, window, rel_threshold);
    if (intervals.empty()) return std::nullopt;
    return intervals.front();
}

bool has_plateau(const std::vector<CollapseInterval>& intervals, double min_length) {
    return std::any_of(intervals.begin(), intervals.end(),
                       [&](const CollapseInterval& ci) { return ci.length() >= min_length; });
}

TimeSeries mean_photon_series(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                              const ModelParams& params, const std::vector<double>& times,
                              const AnalysisOptions& opts) {
    Prepared p = prepare(q_spec, r_spec, opts);
    return evaluate_series(p, params, times, opts, "mean_n1",
                           [](const blocks::AmplitudeTensor& t) { return obs::mean_photon(t, 1); });
}

TimeSeries svne_series(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                       const ModelParams& params, const std::vector<double>& times,
                       const AnalysisOptions& opts) {
    Prepared p = prepare(q_spec, r_spec, opts);
    return evaluate_series(p, params, times, opts, "svne", [](const blocks::AmplitudeTensor& t) {
        return obs::svne(obs::rho_atom(t));
    });
}

double select_eit_time(const fock::FieldSpec& q_spec, const ModelParams& params,
                       double delta_lo, double delta_hi, const AnalysisOptions& opts) {
    fock::FieldSpec vacuum = fock::FieldSpec::coherent(0.0);
    std::vector<double> times = make_time_grid(0.0, opts.eit_window_tmax, opts.eit_window_samples);
    auto window_at = [&](double delta1) {
        ModelParams p = params;
        p.delta1 = delta1;
        TimeSeries series = mean_photon_series(q_spec, vacuum, p, times, opts);
        auto ci = first_collapse(series, opts.collapse_window, opts.collapse_threshold);
        if (!ci)
            throw std::runtime_error("select_eit_time: no probe collapse at delta1 = " +
                                     std::to_string(delta1));
        return *ci;
    };
    // The resonant window ends earliest (its revival comes soonest), so the
    // grid center is probed along with the endpoints.
    std::vector<double> probes = {delta_lo, delta_hi};
    if (delta_lo < 0.0 && delta_hi > 0.0) probes.push_back(0.0);
    double start = 0.0, end = opts.eit_window_tmax;
    for (double d : probes) {
        CollapseInterval ci = window_at(d);
        start = std::max(start, ci.t_start);
        end = std::min(end, ci.t_end);
    }
    if (!(start < end))
        throw std::runtime_error("select_eit_time: first-collapse intervals do not overlap");
    return 0.5 * (start + end);
}

EitSpectrum eit_spectrum(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                         const ModelParams& params, const std::vector<double>& delta1_grid,
                         double t_star, const AnalysisOptions& opts) {
    if (delta1_grid.size() < 2)
        throw std::invalid_argument("eit_spectrum: need at least two grid points");
    for (size_t i = 1; i < delta1_grid.size(); ++i)
        if (!(delta1_grid[i] > delta1_grid[i - 1]))
            throw std::invalid_argument("eit_spectrum: grid must be strictly increasing");

    Prepared p = prepare(q_spec, r_spec, opts);
    EitSpectrum spec;
    spec.delta1_grid = delta1_grid;
    spec.values.assign(delta1_grid.size(), 0.0);
    spec.t_star = t_star;
    spec.params = params;
    spec.field1 = q_spec;
    spec.field2 = r_spec;
    parallel_for(delta1_grid.size(), opts.threads, [&](size_t i) {
        ModelParams local = params;
        local.delta1 = delta1_grid[i];
        blocks::AmplitudeTensor tensor = blocks::evolve(p.q, p.r, local, t_star);
        spec.values[i] = obs::mean_photon(tensor, 1);
    });
    return spec;
}

double eit_asymmetry(const EitSpectrum& spectrum) {
    const auto& grid = spectrum.delta1_grid;
    size_t n = grid.size();
    if (n < 2) throw std::invalid_argument("eit_asymmetry: spectrum too small");
    double scale = std::max(std::abs(grid.front()), std::abs(grid.back()));
    for (size_t i = 0; i < n; ++i)
        if (std::abs(grid[i] + grid[n - 1 - i]) > 1e-9 * std::max(1.0, scale))
            throw std::invalid_argument("eit_asymmetry: grid is not symmetric about 0");

    double odd_sq = 0.0, full_sq = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double odd = 0.5 * (spectrum.values[i] - spectrum.values[n - 1 - i]);
        odd_sq += odd * odd;
        full_sq += spectrum.values[i] * spectrum.values[i];
    }
    return full_sq > 0.0 ? std::sqrt(odd_sq / full_sq) : 0.0;
}

std::optional<double> estimate_revival_spacing(const TimeSeries& series) {
    series.validate();
    size_t len = series.size();
    if (len < 8) return std::nullopt;
    double mean = std::accumulate(series.values.begin(), series.values.end(), 0.0) /
                  static_cast<double>(len);
    std::vector<double> x(len);
    for (size_t i = 0; i < len; ++i) x[i] = series.values[i] - mean;

    size_t max_lag = len / 2;
    std::vector<double> acf(max_lag + 1, 0.0);
    for (size_t lag = 0; lag <= max_lag; ++lag) {
        double acc = 0.0;
        for (size_t i = 0; i + lag < len; ++i) acc += x[i] * x[i + lag];
        acf[lag] = acc / static_cast<double>(len - lag);
    }
    if (acf[0] <= 0.0) return std::nullopt;

    // first zero crossing, then the dominant peak beyond it
    size_t zero = 0;
    for (size_t lag = 1; lag <= max_lag; ++lag)
        if (acf[lag] < 0.0) {
            zero = lag;
            break;
        }
    if (zero == 0) return std::nullopt;
    size_t best = 0;
    for (size_t lag = zero; lag <= max_lag; ++lag)
        if (best == 0 || acf[lag] > acf[best]) best = lag;
    if (best == 0 || acf[best] <= 0.0) return std::nullopt;
    double dt = (series.times.back() - series.times.front()) / static_cast<double>(len - 1);
    return static_cast<double>(best) * dt;
}

std::vector<KappaRun> kappa_sweep(const fock::FieldSpec& q_spec, const fock::FieldSpec& r_spec,
                                  const ModelParams& params, const std::vector<double>& kappa_list,
                                  const std::vector<double>& times, const AnalysisOptions& opts) {
    std::vector<KappaRun> runs;
    runs.reserve(kappa_list.size());
    for (double kappa : kappa_list) {
        ModelParams local = params;
        local.coupling_form = CouplingForm::DeformedSU11;
        local.kappa1 = kappa;
        local.kappa2 = kappa;
        KappaRun run;
        run.kappa = kappa;
        run.series = svne_series(q_spec, r_spec, local, times, opts);
        run.series.label = "svne_kappa_" + std::to_string(kappa);
        run.collapses = detect_collapses(run.series, opts.collapse_window, opts.collapse_threshold);
        run.revival_spacing = estimate_revival_spacing(run.series);
        runs.push_back(std::move(run));
    }
    return runs;
}

}  // namespace lambdajc::analysis
