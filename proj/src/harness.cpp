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

#include "mofo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "mofo/errors.hpp"

namespace mofo
{

namespace
{

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
    {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
        {
            throw std::invalid_argument(value);
        }
        return v;
    }
    catch (const std::exception&)
    {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value)
{
    try
    {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size())
        {
            throw std::invalid_argument(value);
        }
        return v;
    }
    catch (const std::exception&)
    {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as an integer");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value)
{
    try
    {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size())
        {
            throw std::invalid_argument(value);
        }
        return v;
    }
    catch (const std::exception&)
    {
        throw ConfigError("key '" + key + "': cannot parse '" + value +
                          "' as an unsigned integer");
    }
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "yes" || value == "on")
    {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off")
    {
        return false;
    }
    throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a boolean");
}

std::vector<double> parse_list(const std::string& key, const std::string& value)
{
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
        {
            out.push_back(parse_double(key, item));
        }
    }
    if (out.empty())
    {
        throw ConfigError("key '" + key + "': empty list");
    }
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos)
        {
            line.erase(comment);
        }
        line = trim(line);
        if (line.empty())
        {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value)
{
    if (key == "problem") problem = value;
    else if (key == "optimizer") optimizer = value;
    else if (key == "steps") steps = parse_int(key, value);
    else if (key == "seed") seed = parse_uint(key, value);
    else if (key == "out") out_dir = value;
    else if (key == "theory_mode") hyper.theory_mode = parse_bool(key, value);
    else if (key == "lr") hyper.lr.base = parse_double(key, value);
    else if (key == "lr_schedule") hyper.lr.kind = lr_schedule_from_string(value);
    else if (key == "beta1") hyper.beta1 = parse_double(key, value);
    else if (key == "beta2") hyper.beta2 = parse_double(key, value);
    else if (key == "epsilon") hyper.epsilon = parse_double(key, value);
    else if (key == "alpha") hyper.alpha_pct = parse_double(key, value);
    else if (key == "lion_beta1") hyper.lion_beta1 = parse_double(key, value);
    else if (key == "lion_beta2") hyper.lion_beta2 = parse_double(key, value);
    else if (key == "lion_weight_decay") hyper.lion_weight_decay = parse_double(key, value);
    else if (key == "ratio_epsilon") hyper.ratio_epsilon = parse_double(key, value);
    else if (key == "reg") reg_kind = reg_kind_from_string(value);
    else if (key == "reg_lambda") reg_lambda = parse_double(key, value);
    else if (key == "batch_size") batch_size = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "sig_threshold") sig_threshold = parse_double(key, value);
    else if (key == "alpha_grid") alpha_grid = parse_list(key, value);
    else if (key == "lambda_grid") lambda_grid = parse_list(key, value);
    else if (key == "example1_d") example1_d = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "example1_a") example1_a = parse_list(key, value);
    else if (key == "example1_b") example1_b = parse_list(key, value);
    else if (key == "mlp_hidden") mlp_hidden = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "mlp_n_per_task")
        mlp_n_per_task = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "mlp_input_dim")
        two_task.input_dim = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "mlp_teacher_hidden")
        two_task.teacher_hidden = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "mlp_feature_range") two_task.feature_range = parse_double(key, value);
    else if (key == "mlp_bias_range") two_task.bias_range = parse_double(key, value);
    else if (key == "mlp_output_scale") two_task.output_scale = parse_double(key, value);
    else if (key == "mlp_task_shift") two_task.task_shift = parse_double(key, value);
    else if (key == "mlp_target_offset") two_task.target_offset = parse_double(key, value);
    else if (key == "mlp_pretrain_lr") mlp_pretrain_lr = parse_double(key, value);
    else if (key == "mlp_pretrain_threshold") mlp_pretrain_threshold = parse_double(key, value);
    else if (key == "mlp_pretrain_max_steps") mlp_pretrain_max_steps = parse_int(key, value);
    else
    {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void ExperimentConfig::validate() const
{
    if (steps < 1)
    {
        throw ConfigError("steps must be at least 1");
    }
    if (problem != "example1" && problem != "mlp")
    {
        throw ConfigError("unknown problem '" + problem + "'");
    }
    const OptimizerKind kind = optimizer_kind_from_string(optimizer);
    hyper.validate(kind);
    if (reg_lambda < 0.0)
    {
        throw ConfigError("reg_lambda must be nonnegative");
    }
    if (!(sig_threshold > 0.0))
    {
        throw ConfigError("sig_threshold must be positive");
    }
    if (problem == "example1")
    {
        if (example1_a.size() != example1_b.size())
        {
            throw ConfigError("example1_a and example1_b must have the same length");
        }
    }
    if (problem == "mlp" && mlp_n_per_task == 0)
    {
        throw ConfigError("mlp_n_per_task must be at least 1");
    }
}

std::optional<std::string> env_out_dir()
{
    const char* v = std::getenv("MOFO_OUT_DIR");
    if (v != nullptr && *v != '\0')
    {
        return std::string(v);
    }
    return std::nullopt;
}

std::string format_g17(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace
{

std::shared_ptr<Problem> build_problem(const ExperimentConfig& cfg)
{
    if (cfg.problem == "example1")
    {
        std::vector<double> a = cfg.example1_a;
        std::vector<double> b = cfg.example1_b;
        if (cfg.example1_d.has_value())
        {
            a.assign(*cfg.example1_d, 1.0);
            b.assign(*cfg.example1_d, 1.0);
        }
        return std::make_shared<Example1Problem>(std::move(a), std::move(b));
    }
    auto [task_a, task_b] = make_two_task_data(cfg.seed, cfg.mlp_n_per_task, cfg.two_task);
    const MlpShape shape{cfg.two_task.input_dim, cfg.mlp_hidden, 1};
    PretrainResult pre = pretrain_mlp(shape, task_a, cfg.seed, cfg.mlp_pretrain_lr,
                                      cfg.mlp_pretrain_threshold, cfg.mlp_pretrain_max_steps);
    return std::make_shared<MlpProblem>(shape, std::move(task_b), std::move(task_a),
                                        std::move(pre.theta));
}

void write_row(std::ostream& out, const RunRow& row)
{
    out << row.t << ',' << format_g17(row.lr) << ',' << format_g17(row.loss) << ','
        << format_g17(row.aux_loss) << ',' << format_g17(row.grad_inf) << ','
        << format_g17(row.distance) << ',' << row.mask_count_total << '\n';
}

constexpr const char* kTraceHeader = "t,lr,loss,aux_loss,grad_inf,distance,mask_count_total";

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::shared_ptr<Problem> problem = build_problem(cfg);
    const LayoutPtr& layout = problem->layout();

    RegSpec reg;
    reg.kind = cfg.reg_kind;
    reg.lambda = cfg.reg_lambda;
    if (reg.kind != RegKind::none)
    {
        reg.theta0 = problem->theta0();
    }

    const OptimizerKind kind = optimizer_kind_from_string(cfg.optimizer);
    Optimizer opt(kind, layout, cfg.hyper);
    CounterRng run_rng(cfg.seed);
    CounterRng mask_rng = run_rng.fork(11);
    CounterRng batch_rng = run_rng.fork(12);

    PartitionedVector theta = problem->theta0();

    std::ofstream trace;
    if (!cfg.out_dir.empty())
    {
        std::filesystem::create_directories(cfg.out_dir);
        trace.open(cfg.out_dir + "/trace.csv", std::ios::binary);
        if (!trace)
        {
            throw ConfigError("cannot write to '" + cfg.out_dir + "'");
        }
        trace << kTraceHeader << '\n';
    }

    RunResult result{RunRecord{}, theta, problem};
    result.record.lr_kind = cfg.hyper.lr.kind;
    result.record.rows.reserve(static_cast<std::size_t>(cfg.steps));

    for (std::int64_t t = 1; t <= cfg.steps; ++t)
    {
        auto [base_loss, base_grad] =
            cfg.batch_size > 0 ? problem->loss_and_grad_minibatch(theta, batch_rng, cfg.batch_size)
                               : problem->loss_and_grad(theta);
        if (!std::isfinite(base_loss))
        {
            RunRow bad{t, cfg.hyper.lr.at(t), base_loss, std::nan(""), std::nan(""),
                       std::nan(""), 0};
            if (trace.is_open())
            {
                write_row(trace, bad);
                trace.flush();
            }
            result.record.rows.push_back(bad);
            throw NumericError("non-finite loss at step " + std::to_string(t));
        }
        auto [loss, grad] = regularized_loss_and_grad(base_loss, base_grad, theta, reg);
        double grad_inf = 0.0;
        for (std::size_t i = 0; i < grad.size(); ++i)
        {
            grad_inf = std::max(grad_inf, std::fabs(grad[i]));
        }

        const StepReport report = opt.step(theta, grad, &mask_rng);
        if (cfg.hyper.theory_mode &&
            !check_lemma_bound(report, cfg.hyper, *layout, t))
        {
            ++result.record.lemma_violations;
        }

        RunRow row;
        row.t = t;
        row.lr = report.lr;
        row.loss = base_loss;
        row.aux_loss = problem->aux_loss(theta);
        row.grad_inf = grad_inf;
        row.distance = block_distance(theta, problem->theta0());
        row.mask_count_total = report.mask_count_total;
        if (trace.is_open())
        {
            write_row(trace, row);
        }
        result.record.rows.push_back(row);
    }

    result.theta = theta;
    RunSummary& s = result.record.summary;
    s.min_grad_inf = result.record.rows.front().grad_inf;
    for (const RunRow& row : result.record.rows)
    {
        s.min_grad_inf = std::min(s.min_grad_inf, row.grad_inf);
    }
    s.final_loss = problem->loss(theta);
    s.final_aux_loss = problem->aux_loss(theta);
    s.final_distance = block_distance(theta, problem->theta0());
    s.significant_change_fraction =
        significant_change_fraction(theta, problem->theta0(), cfg.sig_threshold);
    return result;
}

std::vector<SweepRow> run_pareto_sweep(const ExperimentConfig& cfg)
{
    cfg.validate();
    const bool alpha_sweep = !cfg.alpha_grid.empty();
    const bool lambda_sweep = !cfg.lambda_grid.empty();
    if (alpha_sweep == lambda_sweep)
    {
        throw ConfigError("a sweep needs exactly one of alpha_grid / lambda_grid");
    }
    std::vector<double> grid = alpha_sweep ? cfg.alpha_grid : cfg.lambda_grid;
    std::sort(grid.begin(), grid.end());
    if (std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    {
        throw ConfigError("duplicate grid values");
    }

    std::vector<std::future<SweepRow>> cells;
    cells.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        ExperimentConfig cell = cfg;
        cell.alpha_grid.clear();
        cell.lambda_grid.clear();
        if (alpha_sweep)
        {
            cell.hyper.alpha_pct = grid[k];
        }
        else
        {
            cell.reg_lambda = grid[k];
        }
        if (!cfg.out_dir.empty())
        {
            cell.out_dir = cfg.out_dir + "/cell_" + std::to_string(k);
        }
        const double param = grid[k];
        cells.push_back(std::async(std::launch::async,
                                   [cell, param]() -> SweepRow
                                   {
                                       SweepRow row;
                                       row.param = param;
                                       try
                                       {
                                           row.summary = run_experiment(cell).record.summary;
                                       }
                                       catch (const std::exception& e)
                                       {
                                           row.failed = true;
                                           row.error = e.what();
                                       }
                                       return row;
                                   }));
    }

    std::vector<SweepRow> table;
    table.reserve(cells.size());
    for (auto& cell : cells)
    {
        table.push_back(cell.get());  // merged by grid index, not completion order
    }
    if (!cfg.out_dir.empty())
    {
        std::filesystem::create_directories(cfg.out_dir);
        write_sweep_csv(table, cfg.out_dir + "/sweep.csv");
    }
    return table;
}

void write_record_csv(const RunRecord& record, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << kTraceHeader << '\n';
    for (const RunRow& row : record.rows)
    {
        write_row(out, row);
    }
}

RunRecord read_record_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || trim(line) != kTraceHeader)
    {
        throw ConfigError("'" + path + "' is not a run trace (unexpected header)");
    }
    RunRecord record;
    while (std::getline(in, line))
    {
        line = trim(line);
        if (line.empty())
        {
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ','))
        {
            fields.push_back(field);
        }
        if (fields.size() != 7)
        {
            throw ConfigError("'" + path + "': malformed row '" + line + "'");
        }
        RunRow row;
        row.t = parse_int("t", fields[0]);
        row.lr = parse_double("lr", fields[1]);
        row.loss = parse_double("loss", fields[2]);
        row.aux_loss = parse_double("aux_loss", fields[3]);
        row.grad_inf = parse_double("grad_inf", fields[4]);
        row.distance = parse_double("distance", fields[5]);
        row.mask_count_total = static_cast<std::size_t>(parse_int("mask_count_total", fields[6]));
        record.rows.push_back(row);
    }
    // Recover the schedule kind from the lr column.
    if (record.rows.size() >= 2)
    {
        const double lr1 = record.rows[0].lr;
        const double lr2 = record.rows[1].lr;
        record.lr_kind = std::fabs(lr2 - lr1 / std::sqrt(2.0)) <= 1e-12 * std::fabs(lr1)
                             ? LrSchedule::Kind::inverse_sqrt
                             : LrSchedule::Kind::constant;
    }
    if (!record.rows.empty())
    {
        record.summary.min_grad_inf = record.rows.front().grad_inf;
        for (const RunRow& row : record.rows)
        {
            record.summary.min_grad_inf = std::min(record.summary.min_grad_inf, row.grad_inf);
        }
        record.summary.final_loss = record.rows.back().loss;
        record.summary.final_aux_loss = record.rows.back().aux_loss;
        record.summary.final_distance = record.rows.back().distance;
    }
    return record;
}

namespace
{

constexpr const char* kSweepHeader = "param,final_loss,final_aux_loss,final_distance,status";

}

void write_sweep_csv(const std::vector<SweepRow>& table, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << kSweepHeader << '\n';
    for (const SweepRow& row : table)
    {
        out << format_g17(row.param) << ',' << format_g17(row.summary.final_loss) << ','
            << format_g17(row.summary.final_aux_loss) << ','
            << format_g17(row.summary.final_distance) << ','
            << (row.failed ? "failed" : "ok") << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || trim(line) != kSweepHeader)
    {
        throw ConfigError("'" + path + "' is not a sweep table (unexpected header)");
    }
    std::vector<SweepRow> table;
    while (std::getline(in, line))
    {
        line = trim(line);
        if (line.empty())
        {
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ','))
        {
            fields.push_back(field);
        }
        if (fields.size() != 5)
        {
            throw ConfigError("'" + path + "': malformed row '" + line + "'");
        }
        SweepRow row;
        row.param = parse_double("param", fields[0]);
        row.summary.final_loss = parse_double("final_loss", fields[1]);
        row.summary.final_aux_loss = parse_double("final_aux_loss", fields[2]);
        row.summary.final_distance = parse_double("final_distance", fields[3]);
        row.failed = fields[4] != "ok";
        table.push_back(row);
    }
    return table;
}

PlotKind plot_kind_from_string(std::string_view name)
{
    if (name == "loss_curve") return PlotKind::loss_curve;
    if (name == "distance_bar") return PlotKind::distance_bar;
    if (name == "pareto_scatter") return PlotKind::pareto_scatter;
    throw ConfigError("unknown plot kind '" + std::string(name) + "'");
}

namespace
{

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 56.0;

struct Scale
{
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double to_unit(double v) const
    {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        return h > l ? (a - l) / (h - l) : 0.5;
    }
};

Scale make_scale(double lo, double hi, bool want_log)
{
    Scale s;
    s.lo = lo;
    s.hi = hi;
    s.log = want_log && lo > 0.0 && hi / lo > 100.0;
    return s;
}

double x_px(const Scale& s, double v) { return kMargin + s.to_unit(v) * (kWidth - 2 * kMargin); }
double y_px(const Scale& s, double v)
{
    return kHeight - kMargin - s.to_unit(v) * (kHeight - 2 * kMargin);
}

class SvgWriter
{
public:
    explicit SvgWriter(const std::string& path) : out_(path, std::ios::binary)
    {
        if (!out_)
        {
            throw ConfigError("cannot write '" + path + "'");
        }
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
             << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
        out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    void axes(const std::string& x_label, const std::string& y_label, const Scale& xs,
              const Scale& ys)
    {
        line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin);
        line(kMargin, kMargin, kMargin, kHeight - kMargin);
        text(kWidth / 2, kHeight - 12, x_label, "middle");
        text(14, kHeight / 2, y_label, "middle", true);
        // Extremes labelled with the exact data values.
        text(kMargin, kHeight - kMargin + 16, format_g17(xs.lo), "start");
        text(kWidth - kMargin, kHeight - kMargin + 16, format_g17(xs.hi), "end");
        text(kMargin - 4, kHeight - kMargin, format_g17(ys.lo), "end");
        text(kMargin - 4, kMargin + 8, format_g17(ys.hi), "end");
    }

    void line(double x1, double y1, double x2, double y2)
    {
        out_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
             << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    void text(double x, double y, const std::string& s, const std::string& anchor,
              bool vertical = false)
    {
        out_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"11\" text-anchor=\""
             << anchor << "\"";
        if (vertical)
        {
            out_ << " transform=\"rotate(-90 " << x << " " << y << ")\"";
        }
        out_ << ">" << s << "</text>\n";
    }

    void polyline_begin() { out_ << "<polyline fill=\"none\" stroke=\"#2266aa\" stroke-width=\"1.5\" points=\""; }
    void polyline_point(double x, double y) { out_ << x << "," << y << " "; }
    void polyline_end() { out_ << "\"/>\n"; }

    void marker(double x, double y, const std::string& title)
    {
        out_ << "<circle cx=\"" << x << "\" cy=\"" << y
             << "\" r=\"3.5\" fill=\"#aa4422\"><title>" << title << "</title></circle>\n";
    }

    void bar(double x, double y, double w, double base_y, const std::string& title)
    {
        out_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
             << std::max(0.0, base_y - y) << "\" fill=\"#44aa66\"><title>" << title
             << "</title></rect>\n";
    }

    void finish() { out_ << "</svg>\n"; }

private:
    std::ofstream out_;
};

}  // namespace

void emit_plot(const RunRecord& record, PlotKind kind, const std::string& path)
{
    if (record.rows.empty())
    {
        throw ConfigError("cannot plot an empty record");
    }
    if (kind == PlotKind::pareto_scatter)
    {
        throw ConfigError("pareto_scatter needs a sweep table");
    }
    const bool losses = kind == PlotKind::loss_curve;
    double lo = losses ? record.rows.front().loss : record.rows.front().distance;
    double hi = lo;
    for (const RunRow& row : record.rows)
    {
        const double v = losses ? row.loss : row.distance;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const Scale xs = make_scale(static_cast<double>(record.rows.front().t),
                                static_cast<double>(record.rows.back().t), false);
    const Scale ys = make_scale(lo, hi, losses);

    SvgWriter svg(path);
    svg.axes("t", losses ? "loss" : "distance", xs, ys);
    if (losses)
    {
        svg.polyline_begin();
        for (const RunRow& row : record.rows)
        {
            svg.polyline_point(x_px(xs, static_cast<double>(row.t)), y_px(ys, row.loss));
        }
        svg.polyline_end();
        // One exact-value marker per decile so the numbers are inspectable.
        const std::size_t step = std::max<std::size_t>(1, record.rows.size() / 10);
        for (std::size_t i = 0; i < record.rows.size(); i += step)
        {
            const RunRow& row = record.rows[i];
            svg.marker(x_px(xs, static_cast<double>(row.t)), y_px(ys, row.loss),
                       std::to_string(row.t) + "," + format_g17(row.loss));
        }
    }
    else
    {
        const std::size_t bars = std::min<std::size_t>(60, record.rows.size());
        const std::size_t step = std::max<std::size_t>(1, record.rows.size() / bars);
        const double w = (kWidth - 2 * kMargin) / static_cast<double>(bars + 1);
        for (std::size_t i = 0; i < record.rows.size(); i += step)
        {
            const RunRow& row = record.rows[i];
            svg.bar(x_px(xs, static_cast<double>(row.t)) - w / 2, y_px(ys, row.distance), w,
                    kHeight - kMargin,
                    std::to_string(row.t) + "," + format_g17(row.distance));
        }
    }
    svg.finish();
}

void emit_plot(const std::vector<SweepRow>& table, PlotKind kind, const std::string& path)
{
    if (kind != PlotKind::pareto_scatter)
    {
        throw ConfigError("record plots need a run trace");
    }
    std::vector<const SweepRow*> ok;
    for (const SweepRow& row : table)
    {
        if (!row.failed)
        {
            ok.push_back(&row);
        }
    }
    if (ok.empty())
    {
        throw ConfigError("cannot plot an empty sweep table");
    }
    double xlo = ok.front()->summary.final_loss, xhi = xlo;
    double ylo = ok.front()->summary.final_aux_loss, yhi = ylo;
    for (const SweepRow* row : ok)
    {
        xlo = std::min(xlo, row->summary.final_loss);
        xhi = std::max(xhi, row->summary.final_loss);
        ylo = std::min(ylo, row->summary.final_aux_loss);
        yhi = std::max(yhi, row->summary.final_aux_loss);
    }
    const Scale xs = make_scale(xlo, xhi, true);
    const Scale ys = make_scale(ylo, yhi, true);
    SvgWriter svg(path);
    svg.axes("final loss", "final aux loss", xs, ys);
    for (const SweepRow* row : ok)
    {
        svg.marker(x_px(xs, row->summary.final_loss), y_px(ys, row->summary.final_aux_loss),
                   format_g17(row->param) + "," + format_g17(row->summary.final_loss) + "," +
                       format_g17(row->summary.final_aux_loss));
    }
    svg.finish();
}

}  // namespace mofo
