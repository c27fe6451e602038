#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdajc/fock.hpp"
#include "lambdajc/model.hpp"
#include "lambdajc/toml.hpp"

namespace lambdajc::cli {

enum class Experiment { Evolve, Eit, KappaSweep, Validate };

std::string to_string(Experiment e);

struct TimeGridSpec {
    double start = 0.0;
    double stop = 100.0;
    int count = 2000;
};

struct EitSpec {
    double delta1_min = -10.0;
    double delta1_max = 10.0;
    int count = 41;
    std::optional<double> t_star;   // auto-selected when absent
    double window_tmax = 40.0;      // probe-collapse search span
    int window_samples = 801;
    // at most one sweep list; empty means a single spectrum
    std::vector<double> chi2_list;
    std::vector<double> delta2_list;
    std::vector<double> kappa_list;
    std::vector<double> alpha2_sq_list;  // coupling-field intensities (coherent field2 only)
};

struct CollapseSpec {
    double window = 5.0;
    double threshold = 0.15;
};

struct ValidateSpec {
    uint64_t seed = 42;
    int cases = 100;
    int max_cutoff = 20;
    double t_max = 20.0;
    double tolerance = 1e-8;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Evolve;
    fock::FieldSpec field1;
    fock::FieldSpec field2;
    ModelParams params;
    TimeGridSpec times;
    EitSpec eit;
    CollapseSpec collapse;
    ValidateSpec validate;
    std::vector<double> kappa_list;  // kappa_sweep experiment
    double cutoff_epsilon = 1e-12;
    int cutoff_ceiling = fock::kDefaultCutoffCeiling;
    std::string output = "run";
};

// Carries every violation found during validation, not just the first.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

ExperimentConfig parse_config(const toml::Table& table);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Applies "section.key=value" (or "key=value") assignments on top of a
// parsed table; values use the config file syntax.
void apply_override(toml::Table& table, const std::string& assignment);

}  // namespace lambdajc::cli
