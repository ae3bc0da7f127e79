// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace stealth {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an iterative solver exhausts its budget; carries the last
// residuals so the caller can diagnose the instance.
struct SolverError : std::runtime_error {
    double stationarity = 0.0;
    double complementarity = 0.0;
    double feasibility = 0.0;
    int iterations = 0;

    SolverError(const std::string& what, double stat, double comp, double feas, int iters)
        : std::runtime_error(what),
          stationarity(stat),
          complementarity(comp),
          feasibility(feas),
          iterations(iters) {}
};

}  // namespace stealth
