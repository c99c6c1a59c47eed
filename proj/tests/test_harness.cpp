#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mofo/errors.hpp"
#include "mofo/harness.hpp"

using namespace mofo;

namespace
{

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_dir(const std::string& tag)
{
    const auto dir = std::filesystem::temp_directory_path() / ("mofo_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

ExperimentConfig small_example1()
{
    ExperimentConfig cfg;
    cfg.problem = "example1";
    cfg.optimizer = "mofo";
    cfg.hyper.alpha_pct = 50.0;
    cfg.hyper.lr = LrSchedule{LrSchedule::Kind::constant, 1e-2};
    cfg.steps = 200;
    cfg.seed = 1;
    return cfg;
}

}  // namespace

TEST_CASE("identical configs produce byte-identical traces")
{
    const std::string dir = temp_dir("determinism");
    ExperimentConfig cfg = small_example1();
    cfg.out_dir = dir + "/a";
    run_experiment(cfg);
    cfg.out_dir = dir + "/b";
    run_experiment(cfg);
    CHECK(slurp(dir + "/a/trace.csv") == slurp(dir + "/b/trace.csv"));
}

TEST_CASE("zero steps is a configuration error")
{
    ExperimentConfig cfg = small_example1();
    cfg.steps = 0;
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("the filtered run settles on the nearer axis minimum")
{
    ExperimentConfig cfg = small_example1();
    cfg.steps = 30000;
    const RunResult result = run_experiment(cfg);
    CHECK(std::fabs(result.theta[0] - 1.0) < 1e-3);
    CHECK(std::fabs(result.theta[1]) < 1e-3);
}

TEST_CASE("config files parse keys, comments and overrides")
{
    const std::string dir = temp_dir("config");
    {
        std::ofstream out(dir + "/exp.ini");
        out << "# product objective preset\n";
        out << "problem = example1\n";
        out << "optimizer = mofo\n";
        out << "alpha = 50\n";
        out << "steps = 10   ; inline comment\n";
        out << "lr = 0.25\n";
        out << "lr_schedule = inverse_sqrt\n";
        out << "example1_a = 1, 2\n";
        out << "example1_b = 3, 4\n";
        out << "\n";
    }
    ExperimentConfig cfg = ExperimentConfig::load_file(dir + "/exp.ini");
    CHECK(cfg.problem == "example1");
    CHECK(cfg.hyper.alpha_pct == 50.0);
    CHECK(cfg.steps == 10);
    CHECK(cfg.hyper.lr.base == 0.25);
    CHECK(cfg.hyper.lr.kind == LrSchedule::Kind::inverse_sqrt);
    CHECK(cfg.example1_a == std::vector<double>{1.0, 2.0});
    CHECK(cfg.example1_b == std::vector<double>{3.0, 4.0});

    // flag-style override wins over the file value
    cfg.set("steps", "25");
    CHECK(cfg.steps == 25);

    CHECK_THROWS_AS(cfg.set("no_such_key", "1"), ConfigError);
    CHECK_THROWS_AS(cfg.set("steps", "many"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::load_file(dir + "/missing.ini"), ConfigError);

    {
        std::ofstream out(dir + "/bad.ini");
        out << "steps without equals\n";
    }
    CHECK_THROWS_AS(ExperimentConfig::load_file(dir + "/bad.ini"), ConfigError);
}

TEST_CASE("the output directory environment override is visible")
{
    setenv("MOFO_OUT_DIR", "/tmp/mofo_env_dir", 1);
    CHECK(env_out_dir() == std::optional<std::string>("/tmp/mofo_env_dir"));
    unsetenv("MOFO_OUT_DIR");
    CHECK_FALSE(env_out_dir().has_value());
}

TEST_CASE("singleton sweeps match the plain run")
{
    ExperimentConfig cfg = small_example1();
    cfg.alpha_grid = {50.0};
    const auto table = run_pareto_sweep(cfg);
    REQUIRE(table.size() == 1);
    CHECK_FALSE(table[0].failed);
    const RunResult direct = run_experiment(small_example1());
    CHECK(table[0].summary.final_loss == direct.record.summary.final_loss);
    CHECK(table[0].summary.final_distance == direct.record.summary.final_distance);
}

TEST_CASE("the alpha grid runs one cell per value, sorted")
{
    const std::string dir = temp_dir("sweep");
    ExperimentConfig cfg = small_example1();
    cfg.example1_a = {1.0, 0.8, 1.2, 0.9, 1.1};
    cfg.example1_b = {1.1, 0.9, 0.7, 1.3, 1.0};
    cfg.steps = 100;
    cfg.alpha_grid = {80.0, 5.0, 40.0, 10.0, 20.0, 15.0};
    cfg.out_dir = dir;
    const auto table = run_pareto_sweep(cfg);
    REQUIRE(table.size() == 6);
    const std::vector<double> expected{5.0, 10.0, 15.0, 20.0, 40.0, 80.0};
    for (std::size_t i = 0; i < 6; ++i)
    {
        CHECK(table[i].param == expected[i]);
        CHECK_FALSE(table[i].failed);
    }
    CHECK(std::filesystem::exists(dir + "/sweep.csv"));
    CHECK(std::filesystem::exists(dir + "/cell_0/trace.csv"));
    CHECK(std::filesystem::exists(dir + "/cell_5/trace.csv"));
}

TEST_CASE("sweep grids are validated")
{
    ExperimentConfig cfg = small_example1();
    CHECK_THROWS_AS(run_pareto_sweep(cfg), ConfigError);  // no grid

    cfg.alpha_grid = {5.0, 5.0};
    CHECK_THROWS_AS(run_pareto_sweep(cfg), ConfigError);  // duplicates

    cfg.alpha_grid = {5.0};
    cfg.lambda_grid = {0.1};
    CHECK_THROWS_AS(run_pareto_sweep(cfg), ConfigError);  // both grids
}

TEST_CASE("a failing cell is recorded and never aborts its siblings")
{
    ExperimentConfig cfg = small_example1();
    cfg.steps = 50;
    cfg.alpha_grid = {50.0, 150.0};  // the second cell fails validation
    const auto table = run_pareto_sweep(cfg);
    REQUIRE(table.size() == 2);
    CHECK_FALSE(table[0].failed);
    CHECK(table[1].failed);
    CHECK_FALSE(table[1].error.empty());
}

TEST_CASE("lambda sweeps vary the regularizer strength")
{
    ExperimentConfig cfg = small_example1();
    cfg.optimizer = "adam";
    cfg.hyper.alpha_pct = 100.0;
    cfg.reg_kind = RegKind::l2;
    cfg.steps = 400;
    cfg.lambda_grid = {0.0, 0.3};
    const auto table = run_pareto_sweep(cfg);
    REQUIRE(table.size() == 2);
    // the stronger pull toward the origin keeps the iterate closer
    CHECK(table[1].summary.final_distance < table[0].summary.final_distance);
}

TEST_CASE("csv traces round-trip")
{
    const std::string dir = temp_dir("roundtrip");
    ExperimentConfig cfg = small_example1();
    cfg.steps = 64;
    const RunResult result = run_experiment(cfg);
    write_record_csv(result.record, dir + "/trace.csv");
    const RunRecord back = read_record_csv(dir + "/trace.csv");
    REQUIRE(back.rows.size() == result.record.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i)
    {
        CHECK(back.rows[i].t == result.record.rows[i].t);
        CHECK(back.rows[i].loss == result.record.rows[i].loss);
        CHECK(back.rows[i].grad_inf == result.record.rows[i].grad_inf);
        CHECK(back.rows[i].distance == result.record.rows[i].distance);
        CHECK(back.rows[i].mask_count_total == result.record.rows[i].mask_count_total);
    }
    CHECK(back.lr_kind == LrSchedule::Kind::constant);
}

TEST_CASE("plots render every datum with its exact value")
{
    const std::string dir = temp_dir("plots");
    ExperimentConfig cfg = small_example1();
    cfg.steps = 120;
    const RunResult result = run_experiment(cfg);

    emit_plot(result.record, PlotKind::loss_curve, dir + "/loss.svg");
    const std::string loss_svg = slurp(dir + "/loss.svg");
    CHECK(loss_svg.find("<svg") != std::string::npos);
    CHECK(loss_svg.find(format_g17(result.record.rows.front().loss)) != std::string::npos);

    emit_plot(result.record, PlotKind::distance_bar, dir + "/dist.svg");
    const std::string dist_svg = slurp(dir + "/dist.svg");
    CHECK(dist_svg.find("<rect") != std::string::npos);

    RunRecord empty;
    CHECK_THROWS_AS(emit_plot(empty, PlotKind::loss_curve, dir + "/none.svg"), ConfigError);

    RunRecord single;
    single.rows.push_back(RunRow{1, 0.1, 2.0, 0.0, 1.0, 0.0, 1});
    emit_plot(single, PlotKind::loss_curve, dir + "/single.svg");
    const std::string single_svg = slurp(dir + "/single.svg");
    CHECK(single_svg.find("<circle") != std::string::npos);

    cfg.alpha_grid = {25.0, 50.0, 100.0};
    const auto table = run_pareto_sweep(cfg);
    emit_plot(table, PlotKind::pareto_scatter, dir + "/pareto.svg");
    const std::string pareto_svg = slurp(dir + "/pareto.svg");
    std::size_t markers = 0;
    for (std::size_t pos = pareto_svg.find("<circle"); pos != std::string::npos;
         pos = pareto_svg.find("<circle", pos + 1))
    {
        ++markers;
    }
    CHECK(markers == 3);

    CHECK_THROWS_AS(emit_plot(std::vector<SweepRow>{}, PlotKind::pareto_scatter, dir + "/x.svg"),
                    ConfigError);
}

TEST_CASE("a diverging run writes a diagnostic row and aborts")
{
    const std::string dir = temp_dir("diverge");
    ExperimentConfig cfg = small_example1();
    cfg.optimizer = "adam";
    cfg.hyper.alpha_pct = 100.0;
    cfg.hyper.lr = LrSchedule{LrSchedule::Kind::constant, 1e300};
    cfg.steps = 50;
    cfg.out_dir = dir;
    CHECK_THROWS_AS(run_experiment(cfg), NumericError);
    const std::string trace = slurp(dir + "/trace.csv");
    CHECK(trace.find("inf") != std::string::npos);
}

TEST_CASE("seeded mini-batch runs are reproducible")
{
    ExperimentConfig cfg;
    cfg.problem = "mlp";
    cfg.optimizer = "mofo";
    cfg.hyper.alpha_pct = 10.0;
    cfg.hyper.lr = LrSchedule{LrSchedule::Kind::constant, 3e-3};
    cfg.steps = 80;
    cfg.seed = 4;
    cfg.batch_size = 16;
    const RunResult a = run_experiment(cfg);
    const RunResult b = run_experiment(cfg);
    CHECK(a.record.summary.final_loss == b.record.summary.final_loss);
    for (std::size_t i = 0; i < a.theta.size(); ++i)
    {
        REQUIRE(a.theta[i] == b.theta[i]);
    }
    // mini-batch losses differ from the full-batch trace
    cfg.batch_size = 0;
    const RunResult full = run_experiment(cfg);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.record.rows.size(); ++i)
    {
        any_diff = any_diff || a.record.rows[i].loss != full.record.rows[i].loss;
    }
    CHECK(any_diff);
}

TEST_CASE("plots are byte-deterministic")
{
    const std::string dir = temp_dir("svg_det");
    ExperimentConfig cfg = small_example1();
    cfg.steps = 150;
    const RunResult result = run_experiment(cfg);
    emit_plot(result.record, PlotKind::loss_curve, dir + "/a.svg");
    emit_plot(result.record, PlotKind::loss_curve, dir + "/b.svg");
    CHECK(slurp(dir + "/a.svg") == slurp(dir + "/b.svg"));
}

TEST_CASE("mlp runs record the earlier task as the auxiliary loss")
{
    ExperimentConfig cfg;
    cfg.problem = "mlp";
    cfg.optimizer = "mofo";
    cfg.hyper.alpha_pct = 10.0;
    cfg.hyper.lr = LrSchedule{LrSchedule::Kind::inverse_sqrt, 1e-2};
    cfg.steps = 120;
    cfg.seed = 3;
    const RunResult result = run_experiment(cfg);
    REQUIRE(result.record.rows.size() == 120);
    // pretraining drove task A below the threshold
    CHECK(result.record.rows.front().aux_loss < 5e-3);
    // fine-tuning on task B makes progress from the start
    CHECK(result.record.summary.final_loss < result.record.rows.front().loss);
    // mask: ceil(32*.1) + ceil(16*.1) + ceil(16*.1) + ceil(1*.1) = 4+2+2+1
    CHECK(result.record.rows.front().mask_count_total == 9);
}
