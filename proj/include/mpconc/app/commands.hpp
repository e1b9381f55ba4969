// Copyright 2026 The mpconc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>

#include "mpconc/app/config.hpp"
#include "mpconc/app/report.hpp"

namespace mpconc::app {

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    std::size_t two_copy_cap = kDefaultTwoCopyCap;
    /// Sampling worker threads; never changes the report.
    std::size_t threads = 1;
    std::uint64_t batch_size = std::uint64_t{1} << 16;
    /// Adds per-route wall times to the compute report (makes it
    /// run-dependent). Times are always written to the log stream.
    bool timings = false;
    /// Adds the dense-A evaluation of the two-copy route when D^2 <= 256.
    bool dense_oracle = false;
};

/// All three concurrence routes for a pure state. Refuses mixed states and
/// configs that set `shots`.
Report run_compute(const ExperimentConfig &config, const RunOptions &options,
                   std::ostream &log);

/// Finite-shot simulation of the single-setting measurement.
Report run_sample(const ExperimentConfig &config, const RunOptions &options,
                  std::ostream &log);

struct VerifyOptions {
    std::size_t max_n = 3;
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    std::size_t two_copy_cap = kDefaultTwoCopyCap;
    /// Negative control: scales every trial state by (1 + 1e-6).
    bool corrupt_normalization = false;
};

struct VerifyOutcome {
    Report report;
    bool passed = true;
};

/// Runs the invariant suite over `trials` random states.
VerifyOutcome run_verify(const VerifyOptions &options, std::ostream &log);

/// Full command-line entry point; returns the process exit status.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace mpconc::app
