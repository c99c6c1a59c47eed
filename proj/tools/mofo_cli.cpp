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

// Experiment runner built entirely on the C API in mofo/mofo.h.
//
// Exit codes: 0 success, 1 config error, 2 numeric failure, 3 verification
// failure.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "mofo/mofo.h"

namespace
{

struct ConfigDeleter
{
    void operator()(mofo_config* cfg) const { mofo_config_destroy(cfg); }
};
using ConfigPtr = std::unique_ptr<mofo_config, ConfigDeleter>;

int fail(mofo_status status)
{
    std::fprintf(stderr, "error: %s\n", mofo_last_error());
    return static_cast<int>(status);
}

struct Overrides
{
    std::string config_path;
    std::string out_dir;
    std::string optimizer;
    std::string problem;
    long long steps = -1;
    unsigned long long seed = 0;
    bool seed_set = false;
    double alpha = -1.0;
    double lr = -1.0;
    std::string lr_schedule;
    bool theory_mode = false;
    std::vector<std::string> extra;  // raw key=value pairs
};

void add_common_flags(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--seed", o.seed, "64-bit run seed")->each([&o](const std::string&)
                                                              { o.seed_set = true; });
    cmd->add_option("--steps", o.steps, "number of optimizer steps");
    cmd->add_option("--optimizer", o.optimizer, "optimizer name (adam, mofo, lion, ...)");
    cmd->add_option("--problem", o.problem, "problem name (example1, mlp)");
    cmd->add_option("--alpha", o.alpha, "update fraction in percent, (0, 100]");
    cmd->add_option("--lr", o.lr, "base learning rate");
    cmd->add_option("--lr-schedule", o.lr_schedule, "constant or inverse_sqrt");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_flag("--theory-mode", o.theory_mode, "epsilon = 0 bound-checked mode");
    cmd->add_option("--set", o.extra, "extra key=value override")->take_all();
}

// File < environment < flags.
mofo_status build_config(const Overrides& o, ConfigPtr& out)
{
    mofo_config* raw = nullptr;
    mofo_status status = mofo_config_create(&raw);
    if (status != MOFO_OK)
    {
        return status;
    }
    out.reset(raw);
    if (!o.config_path.empty())
    {
        status = mofo_config_load_file(raw, o.config_path.c_str());
        if (status != MOFO_OK)
        {
            return status;
        }
    }
    const char* env_out = std::getenv("MOFO_OUT_DIR");
    if (env_out != nullptr && *env_out != '\0')
    {
        status = mofo_config_set(raw, "out", env_out);
        if (status != MOFO_OK)
        {
            return status;
        }
    }
    auto set = [&](const char* key, const std::string& value) -> mofo_status
    { return mofo_config_set(raw, key, value.c_str()); };

    if (!o.out_dir.empty() && (status = set("out", o.out_dir)) != MOFO_OK) return status;
    if (!o.optimizer.empty() && (status = set("optimizer", o.optimizer)) != MOFO_OK) return status;
    if (!o.problem.empty() && (status = set("problem", o.problem)) != MOFO_OK) return status;
    if (o.steps >= 0 && (status = set("steps", std::to_string(o.steps))) != MOFO_OK) return status;
    if (o.seed_set && (status = set("seed", std::to_string(o.seed))) != MOFO_OK) return status;
    if (o.alpha > 0 && (status = set("alpha", std::to_string(o.alpha))) != MOFO_OK) return status;
    if (o.lr > 0)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", o.lr);
        if ((status = set("lr", buf)) != MOFO_OK) return status;
    }
    if (!o.lr_schedule.empty() && (status = set("lr_schedule", o.lr_schedule)) != MOFO_OK)
        return status;
    if (o.theory_mode && (status = set("theory_mode", "true")) != MOFO_OK) return status;
    for (const std::string& kv : o.extra)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
        {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            return MOFO_ERR_CONFIG;
        }
        status = mofo_config_set(raw, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        if (status != MOFO_OK)
        {
            return status;
        }
    }
    return MOFO_OK;
}

int do_run(const Overrides& o)
{
    ConfigPtr cfg;
    mofo_status status = build_config(o, cfg);
    if (status != MOFO_OK)
    {
        return fail(status);
    }
    mofo_run_summary summary{};
    status = mofo_run_experiment(cfg.get(), &summary);
    if (status != MOFO_OK)
    {
        return fail(status);
    }
    std::printf("steps                 %lld\n", static_cast<long long>(summary.steps));
    std::printf("final loss            %.17g\n", summary.final_loss);
    std::printf("final aux loss        %.17g\n", summary.final_aux_loss);
    std::printf("final distance        %.17g\n", summary.final_distance);
    std::printf("min grad inf-norm     %.17g\n", summary.min_grad_inf);
    std::printf("significant fraction  %.17g\n", summary.significant_change_fraction);
    return 0;
}

int do_sweep(const Overrides& o)
{
    ConfigPtr cfg;
    mofo_status status = build_config(o, cfg);
    if (status != MOFO_OK)
    {
        return fail(status);
    }
    status = mofo_run_sweep(cfg.get());
    if (status != MOFO_OK)
    {
        return fail(status);
    }
    std::printf("sweep complete\n");
    return 0;
}

int do_verify(const std::string& out_dir)
{
    int failures = 0;
    const mofo_status status = mofo_run_acceptance(
        out_dir.empty() ? nullptr : out_dir.c_str(),
        [](const char* line, void*) { std::printf("%s\n", line); }, nullptr, &failures);
    if (status == MOFO_OK)
    {
        std::printf("all checks passed\n");
        return 0;
    }
    if (status == MOFO_ERR_ACCEPTANCE)
    {
        std::printf("%d check(s) failed\n", failures);
        return 3;
    }
    return fail(status);
}

int do_plot(const std::string& csv, const std::string& kind, const std::string& svg)
{
    const mofo_status status = mofo_plot_csv(csv.c_str(), kind.c_str(), svg.c_str());
    if (status != MOFO_OK)
    {
        return fail(status);
    }
    std::printf("wrote %s\n", svg.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"momentum-filtered optimization experiments"};
    app.require_subcommand(1);

    Overrides run_o;
    CLI::App* run_cmd = app.add_subcommand("run", "execute a single experiment");
    add_common_flags(run_cmd, run_o);

    Overrides sweep_o;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run an alpha or lambda grid");
    add_common_flags(sweep_cmd, sweep_o);

    std::string verify_out;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    verify_cmd->add_option("--out", verify_out, "directory for verification artifacts");

    std::string plot_csv, plot_kind = "loss_curve", plot_svg;
    CLI::App* plot_cmd = app.add_subcommand("plot", "re-render a CSV as an SVG");
    plot_cmd->add_option("csv", plot_csv, "trace.csv or sweep.csv")->required();
    plot_cmd->add_option("svg", plot_svg, "output SVG path")->required();
    plot_cmd->add_option("--kind", plot_kind, "loss_curve, distance_bar or pareto_scatter");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (run_cmd->parsed())
    {
        return do_run(run_o);
    }
    if (sweep_cmd->parsed())
    {
        return do_sweep(sweep_o);
    }
    if (verify_cmd->parsed())
    {
        return do_verify(verify_out);
    }
    return do_plot(plot_csv, plot_kind, plot_svg);
}
