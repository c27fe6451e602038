#pragma once

#include <string>

#include "lambdajc/config.hpp"

namespace lambdajc::cli {

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
};

// Executes one experiment; writes CSV outputs plus a JSON sidecar carrying
// the full context. Returns a process exit status (0 on success; 3 when a
// validate run exceeds its fidelity tolerance).
int run(const ExperimentConfig& config, const RunOptions& options);

}  // namespace lambdajc::cli
