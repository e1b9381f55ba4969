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

#include "mpconc/app/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mpconc/concurrence.hpp"
#include "mpconc/kernels.hpp"
#include "mpconc/sampling.hpp"
#include "mpconc/states.hpp"

namespace mpconc::app {
namespace {

using Clock = std::chrono::steady_clock;

template <class F>
auto timed(F &&f, double &seconds) {
    const auto start = Clock::now();
    auto result = f();
    seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

Report index_array(const std::vector<std::size_t> &v) {
    Report out = Report::array();
    for (const std::size_t x : v) {
        out.push_back(x);
    }
    return out;
}

double z_score(double estimate, double exact, double stderr_) {
    if (!(stderr_ > 0.0) || !std::isfinite(stderr_)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return (estimate - exact) / stderr_;
}

// --- verify ----------------------------------------------------------------

struct Check {
    Check(std::string check_name, double tol)
        : name(std::move(check_name)), tolerance(tol) {}

    std::string name;
    double tolerance;
    std::size_t evaluations = 0;
    std::size_t failures = 0;
    double max_deviation = 0.0;
    std::string first_failure;

    void record(double deviation, const std::string &context) {
        ++evaluations;
        const bool ok = deviation <= tolerance; // false for NaN
        if (!ok) {
            if (failures == 0) {
                first_failure = fmt::format("{}: deviation {}", context,
                                            format_double(deviation));
            }
            ++failures;
        }
        if (!(deviation <= max_deviation)) {
            max_deviation = deviation;
        }
    }

    bool passed() const { return failures == 0; }

    Report to_report() const {
        Report r;
        r["name"] = name;
        r["tolerance"] = tolerance;
        r["evaluations"] = evaluations;
        r["failures"] = failures;
        r["max_deviation"] = number_or_null(max_deviation);
        r["passed"] = passed();
        r["first_failure"] = first_failure.empty() ? Report(nullptr) : Report(first_failure);
        return r;
    }
};

SubsystemDims trial_dims(std::size_t n, std::mt19937_64 &rng, std::size_t cap) {
    std::vector<std::size_t> dims(n);
    for (auto &d : dims) {
        d = 2 + rng() % 2;
    }
    try {
        return SubsystemDims(dims, cap);
    } catch (const CapExceeded &) {
        return SubsystemDims(std::vector<std::size_t>(n, 2), cap);
    }
}

std::string dims_context(std::size_t trial, const SubsystemDims &dims) {
    return fmt::format("trial {} dims {}", trial, dims.to_string());
}

} // namespace

Report run_compute(const ExperimentConfig &config, const RunOptions &options,
                   std::ostream &log) {
    if (config.visibility && *config.visibility < 1.0) {
        throw ConfigError(
            "compute evaluates pure-state formulas but visibility < 1 describes a "
            "mixed state; run `sample` with measured = \"all\" to obtain the "
            "mixedness diagnostic instead");
    }
    if (config.shots) {
        throw ConfigError("'shots' is only meaningful for the sample command");
    }
    const PureState psi = build_state(config.state, options.two_copy_cap);
    const SubsystemSet measured = resolve_measured(config.measured, psi.count());

    double t_two_copy = 0.0;
    double t_reduced = 0.0;
    double t_single = 0.0;
    const auto two = timed([&] { return concurrence_two_copy(psi); }, t_two_copy);
    const auto red = timed([&] { return concurrence_reduced(psi); }, t_reduced);
    const auto one =
        timed([&] { return concurrence_single_observable(psi, measured); }, t_single);

    const std::array values{two.value, red.value, one.value};
    double discrepancy = 0.0;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            discrepancy = std::max(discrepancy, std::abs(values[a] - values[b]));
        }
    }

    log << fmt::format("kernels: {}\n", kernels::backend_name(kernels::active_backend()));
    log << fmt::format("two_copy_A        {:.17g}  ({:.3e} s)\n", two.value, t_two_copy);
    log << fmt::format("reduced_rho       {:.17g}  ({:.3e} s)\n", red.value, t_reduced);
    log << fmt::format("single_observable {:.17g}  ({:.3e} s)\n", one.value, t_single);

    Report report;
    report["command"] = "compute";
    report["state"] = describe(config.state);
    report["dims"] = index_array(psi.dims().dims());
    report["measured"] = index_array(measured.indices());
    Report routes;
    routes["two_copy_A"] = two.value;
    routes["reduced_rho"] = red.value;
    routes["single_observable"] = one.value;
    if (options.dense_oracle) {
        if (psi.dims().two_copy_total() <= kDenseTwoCopyCap) {
            routes["two_copy_A_dense"] =
                concurrence_two_copy(psi, EvaluationPath::dense).value;
        } else {
            routes["two_copy_A_dense"] = nullptr;
            log << "dense oracle skipped: D^2 exceeds " << kDenseTwoCopyCap << "\n";
        }
    }
    report["routes"] = routes;
    report["max_pairwise_discrepancy"] = discrepancy;
    report["p_plus_exact"] = *one.p_plus;
    if (options.timings) {
        Report times;
        times["two_copy_A"] = t_two_copy;
        times["reduced_rho"] = t_reduced;
        times["single_observable"] = t_single;
        report["wall_time_s"] = times;
    }
    return report;
}

Report run_sample(const ExperimentConfig &config, const RunOptions &options,
                  std::ostream &log) {
    if (!config.shots) {
        throw ConfigError("the sample command needs 'shots' in the config");
    }
    const PureState psi = build_state(config.state, options.two_copy_cap);
    const SubsystemSet measured = resolve_measured(config.measured, psi.count());
    const std::uint64_t seed = options.seed_override.value_or(config.seed);
    const double visibility = config.visibility.value_or(1.0);
    const bool pure = visibility >= 1.0;

    const DensityMatrix rho = pure ? DensityMatrix::from_pure(psi) : depolarized(psi, visibility);
    const OutcomeDistribution dist =
        pure ? outcome_distribution(psi, measured) : outcome_distribution(rho, measured);
    SamplingOptions sampling;
    sampling.threads = options.threads;
    sampling.batch_size = options.batch_size;
    log << fmt::format("sampling {} shots over {} outcomes (seed {}, {} thread(s))\n",
                       *config.shots, dist.outcome_count(), seed, options.threads);
    const SampleSummary summary = sample_shots(dist, *config.shots, seed, sampling);
    const MixednessReport mix = mixedness_exact(rho);

    const double protocol_c = 2.0 * std::sqrt(std::max(0.0, 1.0 - dist.all_plus()));
    const double odd_mass = dist.odd_parity_mass();
    const double shots = static_cast<double>(summary.shots);
    const double mixedness_stderr = 2.0 * std::sqrt(odd_mass * (1.0 - odd_mass) / shots);

    Report report;
    report["command"] = "sample";
    report["state"] = describe(config.state);
    report["dims"] = index_array(psi.dims().dims());
    report["visibility"] = visibility;
    report["measured"] = index_array(measured.indices());
    report["shots"] = summary.shots;
    report["seed"] = summary.seed;
    report["batch_size"] = options.batch_size;
    Report counts;
    for (std::size_t mask = 0; mask < summary.counts.size(); ++mask) {
        counts[summary.label(mask).to_string()] = summary.counts[mask];
    }
    report["counts"] = counts;

    Report estimates;
    estimates["p_plus"] = summary.p_plus_hat;
    estimates["p_plus_stderr"] = summary.p_plus_stderr;
    estimates["concurrence"] = summary.concurrence_hat;
    estimates["concurrence_stderr"] = number_or_null(summary.concurrence_stderr);
    estimates["odd_fraction"] = summary.odd_fraction;
    if (measured.is_all()) {
        estimates["mixedness"] = estimate_mixedness(summary);
        estimates["mixedness_stderr"] = mixedness_stderr;
    } else {
        estimates["mixedness"] = nullptr;
        estimates["mixedness_stderr"] = nullptr;
    }
    report["estimates"] = estimates;

    Report exact;
    exact["p_plus"] = dist.all_plus();
    exact["odd_parity_mass"] = odd_mass;
    exact["concurrence_protocol"] = protocol_c;
    exact["concurrence"] = pure ? Report(concurrence_reduced(psi).value) : Report(nullptr);
    exact["mixedness"] = mix.linear_entropy;
    report["exact"] = exact;

    Report z;
    z["p_plus"] = number_or_null(
        z_score(summary.p_plus_hat, dist.all_plus(),
                std::sqrt(dist.all_plus() * (1.0 - dist.all_plus()) / shots)));
    z["concurrence"] =
        number_or_null(z_score(summary.concurrence_hat, protocol_c, summary.concurrence_stderr));
    z["mixedness"] = measured.is_all()
                         ? number_or_null(z_score(summary.mixedness_hat,
                                                  mix.linear_entropy, mixedness_stderr))
                         : Report(nullptr);
    report["z_scores"] = z;
    return report;
}

VerifyOutcome run_verify(const VerifyOptions &options, std::ostream &log) {
    if (options.max_n < 2) {
        throw ConfigError("verify needs max_n >= 2");
    }
    Check normalization{"normalization", kNormTolerance};
    Check routes{"route_equivalence", 1e-8};
    Check redundancy{"redundancy", 1e-10};
    Check factorization{"factorization", 1e-8};
    Check odd_parity{"odd_parity_vanishing", 1e-10};
    Check a_tilde{"a_tilde_equals_a", 1e-10};
    Check dense{"dense_oracle", 1e-8};
    Check mixedness{"mixedness_relation", 1e-10};

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::map<std::vector<std::size_t>, std::pair<TwoCopyOperator, TwoCopyOperator>> dense_ops;
    std::size_t skipped = 0;

    for (std::size_t t = 0; t < options.trials; ++t) {
        const std::size_t n = 2 + t % (options.max_n - 1);
        const SubsystemDims dims = trial_dims(n, rng, options.two_copy_cap);
        const std::string ctx = dims_context(t, dims);
        const std::uint64_t state_seed = rng();
        const std::uint64_t local_seed = rng();
        const double visibility = unit(rng);

        Vector raw = random_pure(dims, state_seed).amplitudes();
        if (options.corrupt_normalization) {
            raw *= 1.0 + 1e-6;
        }
        normalization.record(std::abs(raw.norm() - 1.0), ctx);
        std::optional<PureState> built;
        try {
            built.emplace(dims, raw);
        } catch (const InvalidArgument &) {
            ++skipped;
            continue;
        }
        const PureState &psi = *built;

        const double c_two = concurrence_two_copy(psi).value;
        const double c_red = concurrence_reduced(psi).value;
        const double c_one = concurrence_single_observable(psi).value;
        routes.record(std::max({std::abs(c_two - c_red), std::abs(c_two - c_one),
                                std::abs(c_red - c_one)}),
                      ctx);

        const double p_all = p_plus_exact(psi, SubsystemSet::all(n));
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            worst = std::max(worst,
                             std::abs(p_all - p_plus_exact(psi, SubsystemSet::all_but(n, k))));
        }
        redundancy.record(worst, ctx);

        try {
            const std::size_t extra = 2 + local_seed % 2;
            const SubsystemDims ext_dims =
                dims.appended(SubsystemDims({extra}, options.two_copy_cap));
            const PureState ext(ext_dims,
                                two_copy(psi.amplitudes(), random_local(extra, local_seed)));
            factorization.record(std::abs(concurrence_reduced(ext).value - c_red), ctx);
        } catch (const CapExceeded &) {
            // the extended system does not fit; nothing to compare
        }

        odd_parity.record(outcome_distribution(psi, SubsystemSet::all(n)).odd_parity_mass(),
                          ctx);

        if (dims.two_copy_total() <= kDenseTwoCopyCap) {
            auto it = dense_ops.find(dims.dims());
            if (it == dense_ops.end()) {
                it = dense_ops
                         .emplace(dims.dims(),
                                  std::pair{build_dense_A(dims), build_dense_A_tilde(dims)})
                         .first;
            }
            const double a = two_copy_expectation(it->second.first, psi);
            const double at = two_copy_expectation(it->second.second, psi);
            a_tilde.record(std::abs(at - a), ctx);
            dense.record(std::abs(std::sqrt(std::max(0.0, a)) - c_red), ctx);
        }

        const DensityMatrix rho = depolarized(psi, visibility);
        const double odd = outcome_distribution(rho, SubsystemSet::all(n)).odd_parity_mass();
        mixedness.record(std::abs(2.0 * odd - (1.0 - purity(rho))),
                         fmt::format("{} visibility {}", ctx, format_double(visibility)));
    }

    const std::array<const Check *, 8> checks{&normalization, &routes, &redundancy,
                                              &factorization, &odd_parity, &a_tilde,
                                              &dense, &mixedness};
    VerifyOutcome outcome;
    Report warnings = Report::array();
    if (options.trials == 0) {
        warnings.push_back("no trials requested; every check is vacuous");
    }
    if (skipped > 0) {
        warnings.push_back(fmt::format(
            "{} trial(s) stopped after the normalization check", skipped));
    }
    Report check_reports = Report::array();
    for (const Check *c : checks) {
        outcome.passed = outcome.passed && c->passed();
        check_reports.push_back(c->to_report());
        log << fmt::format("{:<22} {:>4} evals  max dev {:<12.3e} tol {:.0e}  {}\n",
                           c->name, c->evaluations, c->max_deviation, c->tolerance,
                           c->passed() ? "PASS" : "FAIL");
    }
    for (const auto &w : warnings) {
        log << "warning: " << w.get<std::string>() << "\n";
    }
    Report &r = outcome.report;
    r["command"] = "verify";
    r["max_n"] = options.max_n;
    r["trials"] = options.trials;
    r["seed"] = options.seed;
    r["corrupt_normalization"] = options.corrupt_normalization;
    r["passed"] = outcome.passed;
    r["warnings"] = warnings;
    r["checks"] = check_reports;
    return outcome;
}

namespace {

void emit(const Report &report, OutputFormat format, const std::string &out_path,
          std::ostream &out) {
    const std::string text = render(report, format);
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw ConfigError("cannot open output file '" + out_path + "'");
    }
    file << text;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multipartite concurrence from two-copy measurements"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_text;
    std::uint64_t seed = 0;
    std::size_t cap = kDefaultTwoCopyCap;
    RunOptions run;
    VerifyOptions verify;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--out", out_path, "Write the report to this file instead of stdout");
        cmd->add_option("--format", format_text, "Report format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--max-dim-cap", cap, "Cap on the two-copy dimension D^2")
            ->check(CLI::PositiveNumber);
    };

    CLI::App *compute = app.add_subcommand("compute", "Evaluate all concurrence routes");
    compute->add_option("--config", config_path, "Experiment config (JSON)")->required();
    compute->add_option("--seed", seed, "Override the config seed");
    compute->add_flag("--timings", run.timings, "Include wall times in the report");
    compute->add_flag("--dense-oracle", run.dense_oracle,
                      "Also evaluate the two-copy route with the dense A matrix");
    add_common(compute);

    CLI::App *sample = app.add_subcommand("sample", "Simulate finite-shot measurements");
    sample->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sample->add_option("--seed", seed, "Override the config seed");
    sample->add_option("--threads", run.threads, "Sampling threads (does not change results)")
        ->check(CLI::PositiveNumber);
    sample->add_option("--batch-size", run.batch_size, "Shots per seeded batch")
        ->check(CLI::PositiveNumber);
    add_common(sample);

    CLI::App *verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
    verify_cmd->add_option("--max-n", verify.max_n, "Largest subsystem count")
        ->default_val(3);
    verify_cmd->add_option("--trials", verify.trials, "Number of random states")
        ->default_val(50);
    verify_cmd->add_option("--seed", verify.seed, "Seed for the random states");
    verify_cmd->add_flag("--corrupt-normalization", verify.corrupt_normalization,
                         "Negative control: perturb every state's norm");
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return static_cast<int>(ExitCode::success);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::invalid_config);
    }

    try {
        if (verify_cmd->parsed()) {
            verify.two_copy_cap = cap;
            const VerifyOutcome outcome = run_verify(verify, err);
            const OutputFormat format =
                format_text.empty() ? OutputFormat::json : parse_output_format(format_text);
            emit(outcome.report, format, out_path, out);
            return static_cast<int>(outcome.passed ? ExitCode::success
                                                   : ExitCode::check_failure);
        }
        const ExperimentConfig config = load_config(config_path);
        const OutputFormat format =
            format_text.empty() ? config.output_format : parse_output_format(format_text);
        run.two_copy_cap = cap;
        if (compute->count("--seed") > 0 || sample->count("--seed") > 0) {
            run.seed_override = seed;
        }
        const Report report =
            compute->parsed() ? run_compute(config, run, err) : run_sample(config, run, err);
        emit(report, format, out_path, out);
        return static_cast<int>(ExitCode::success);
    } catch (const CapExceeded &e) {
        err << "resource cap: " << e.what() << "\n";
        return static_cast<int>(ExitCode::resource_cap);
    } catch (const InvalidArgument &e) {
        err << "invalid configuration: " << e.what() << "\n";
        return static_cast<int>(ExitCode::invalid_config);
    } catch (const ConsistencyError &e) {
        err << "consistency check failed: " << e.what() << "\n";
        return static_cast<int>(ExitCode::check_failure);
    }
}

} // namespace mpconc::app
