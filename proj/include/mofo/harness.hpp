/*
 * Copyright 2026 The mofo project
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mofo/metrics.hpp"
#include "mofo/optimizers.hpp"
#include "mofo/problems.hpp"
#include "mofo/regularizers.hpp"

namespace mofo
{

/// Flat key=value experiment description. Loaded from an INI-style file
/// ('#'/';' comments); individual keys can then be overridden, CLI flags
/// winning over file values.
struct ExperimentConfig
{
    // problem selection
    std::string problem = "example1";
    std::optional<std::size_t> example1_d;  // shorthand: a = b = ones(d)
    std::vector<double> example1_a{1.0, 1.0};
    std::vector<double> example1_b{1.0, 1.0};
    std::size_t mlp_hidden = 16;
    std::size_t mlp_n_per_task = 64;
    TwoTaskParams two_task;
    double mlp_pretrain_lr = 1e-2;
    double mlp_pretrain_threshold = 1e-3;
    std::int64_t mlp_pretrain_max_steps = 30000;
    std::size_t batch_size = 0;  // 0 = full batch

    // optimizer
    std::string optimizer = "adam";
    HyperParams hyper;

    // regularizer
    RegKind reg_kind = RegKind::none;
    double reg_lambda = 0.0;

    // run control
    std::int64_t steps = 1000;
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: keep the trace in memory only
    double sig_threshold = 2e-6;

    // sweep grids (exactly one non-empty for run_pareto_sweep)
    std::vector<double> alpha_grid;
    std::vector<double> lambda_grid;

    static ExperimentConfig load_file(const std::string& path);
    /// Sets one key from its textual form. Throws ConfigError on unknown keys
    /// or unparsable values.
    void set(const std::string& key, const std::string& value);
    void validate() const;
};

/// Value of the output-directory override variable (MOFO_OUT_DIR), if set.
std::optional<std::string> env_out_dir();

struct RunResult
{
    RunRecord record;
    PartitionedVector theta;  // final iterate
    std::shared_ptr<Problem> problem;
};

/// Executes one seeded run. Writes <out>/trace.csv when an output directory is
/// configured; identical config and seed produce byte-identical files. A
/// non-finite loss aborts with NumericError after appending a diagnostic row.
RunResult run_experiment(const ExperimentConfig& cfg);

struct SweepRow
{
    double param = 0.0;
    RunSummary summary;
    bool failed = false;
    std::string error;
};

/// One run per grid value (alpha_grid or lambda_grid), cells executed
/// independently and merged by grid order; a failed cell is recorded and never
/// aborts its siblings. Writes <out>/sweep.csv plus per-cell traces.
std::vector<SweepRow> run_pareto_sweep(const ExperimentConfig& cfg);

enum class PlotKind
{
    loss_curve,     // t vs loss polyline (record)
    distance_bar,   // distance-to-theta0 bars over t (record)
    pareto_scatter  // final loss vs final aux loss markers (sweep table)
};

PlotKind plot_kind_from_string(std::string_view name);

/// Standalone SVG; every plotted datum carries its exact CSV-format value in
/// a <title> element. Throws ConfigError on empty data.
void emit_plot(const RunRecord& record, PlotKind kind, const std::string& path);
void emit_plot(const std::vector<SweepRow>& table, PlotKind kind, const std::string& path);

/// Round-trip float formatting used for every CSV and SVG number
/// (printf "%.17g").
std::string format_g17(double value);

void write_record_csv(const RunRecord& record, const std::string& path);
RunRecord read_record_csv(const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& table, const std::string& path);
std::vector<SweepRow> read_sweep_csv(const std::string& path);

}  // namespace mofo
