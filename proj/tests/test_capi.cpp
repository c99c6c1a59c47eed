#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "mofo/mofo.h"

namespace
{

std::string temp_dir(const std::string& tag)
{
    const auto dir = std::filesystem::temp_directory_path() / ("mofo_capi_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("layouts and vectors round-trip through the C surface")
{
    const char* names[] = {"w1", "b1"};
    const size_t lengths[] = {4, 2};
    mofo_layout* layout = nullptr;
    REQUIRE(mofo_layout_create(names, lengths, 2, &layout) == MOFO_OK);
    CHECK(mofo_layout_dim(layout) == 6);
    CHECK(mofo_layout_block_count(layout) == 2);
    CHECK(mofo_layout_block_length(layout, 1) == 2);

    const double values[] = {0.5, -2, 1, 0.1, 9, -1};
    mofo_vector* v = nullptr;
    REQUIRE(mofo_vector_create(layout, values, 6, &v) == MOFO_OK);
    CHECK(mofo_vector_size(v) == 6);

    double out[6] = {0};
    REQUIRE(mofo_vector_copy_out(v, out, 6) == MOFO_OK);
    CHECK(std::memcmp(out, values, sizeof values) == 0);

    double block[2] = {0};
    REQUIRE(mofo_vector_get_block(v, 1, block, 2) == MOFO_OK);
    CHECK(block[0] == 9);
    const double new_block[2] = {7, 8};
    REQUIRE(mofo_vector_set_block(v, 1, new_block, 2) == MOFO_OK);
    REQUIRE(mofo_vector_get_block(v, 1, block, 2) == MOFO_OK);
    CHECK(block[0] == 7);

    mofo_vector_destroy(v);
    mofo_layout_destroy(layout);
}

TEST_CASE("errors carry codes and messages")
{
    const char* dup_names[] = {"a", "a"};
    const size_t lengths[] = {1, 1};
    mofo_layout* layout = nullptr;
    CHECK(mofo_layout_create(dup_names, lengths, 2, &layout) == MOFO_ERR_CONFIG);
    CHECK(std::strlen(mofo_last_error()) > 0);

    const char* names[] = {"x"};
    const size_t one[] = {2};
    REQUIRE(mofo_layout_create(names, one, 1, &layout) == MOFO_OK);
    const double bad[] = {1.0, std::nan("")};
    mofo_vector* v = nullptr;
    CHECK(mofo_vector_create(layout, bad, 2, &v) == MOFO_ERR_NUMERIC);
    mofo_layout_destroy(layout);
}

TEST_CASE("masks and norms work through handles")
{
    const char* names[] = {"x"};
    const size_t len[] = {4};
    mofo_layout* layout = nullptr;
    REQUIRE(mofo_layout_create(names, len, 1, &layout) == MOFO_OK);
    const double values[] = {0.5, -2, 1, 0.1};
    mofo_vector* v = nullptr;
    REQUIRE(mofo_vector_create(layout, values, 4, &v) == MOFO_OK);

    mofo_mask* mask = nullptr;
    REQUIRE(mofo_top_alpha_mask(v, 50.0, &mask) == MOFO_OK);
    uint8_t bits[4] = {0};
    REQUIRE(mofo_mask_bits(mask, bits, 4) == MOFO_OK);
    CHECK(bits[0] == 0);
    CHECK(bits[1] == 1);
    CHECK(bits[2] == 1);
    CHECK(bits[3] == 0);
    size_t count = 0;
    REQUIRE(mofo_mask_block_count(mask, 0, &count) == MOFO_OK);
    CHECK(count == 2);

    double norm = 0.0;
    REQUIRE(mofo_top_alpha_norm(v, 50.0, &norm) == MOFO_OK);
    CHECK(norm == 3.0);
    CHECK(mofo_top_alpha_norm(v, 0.0, &norm) == MOFO_ERR_CONFIG);

    mofo_vector* masked = nullptr;
    REQUIRE(mofo_apply_mask(v, mask, &masked) == MOFO_OK);
    double out[4] = {0};
    REQUIRE(mofo_vector_copy_out(masked, out, 4) == MOFO_OK);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == -2.0);

    mofo_vector_destroy(masked);
    mofo_mask_destroy(mask);
    mofo_vector_destroy(v);
    mofo_layout_destroy(layout);
}

TEST_CASE("optimizer handles step with reports")
{
    const char* names[] = {"x"};
    const size_t len[] = {1};
    mofo_layout* layout = nullptr;
    REQUIRE(mofo_layout_create(names, len, 1, &layout) == MOFO_OK);

    mofo_hyperparams hp;
    mofo_hyperparams_init(&hp);
    hp.lr = 0.1;
    hp.epsilon = 0.0;
    mofo_optimizer* opt = nullptr;
    REQUIRE(mofo_optimizer_create("adam", layout, &hp, 1, &opt) == MOFO_OK);

    mofo_vector* theta = nullptr;
    REQUIRE(mofo_vector_create(layout, nullptr, 0, &theta) == MOFO_OK);
    const double g[] = {1.0};
    mofo_vector* grad = nullptr;
    REQUIRE(mofo_vector_create(layout, g, 1, &grad) == MOFO_OK);

    mofo_step_report report;
    REQUIRE(mofo_optimizer_step(opt, theta, grad, &report) == MOFO_OK);
    double out[1];
    REQUIRE(mofo_vector_copy_out(theta, out, 1) == MOFO_OK);
    CHECK(out[0] == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(report.mask_count_total == 1);
    CHECK(report.lr == 0.1);

    CHECK(mofo_optimizer_create("nope", layout, &hp, 1, &opt) == MOFO_ERR_CONFIG);

    mofo_vector_destroy(grad);
    mofo_vector_destroy(theta);
    mofo_optimizer_destroy(opt);
    mofo_layout_destroy(layout);
}

TEST_CASE("configs drive runs, sweeps and plots end to end")
{
    const std::string dir = temp_dir("run");
    mofo_config* cfg = nullptr;
    REQUIRE(mofo_config_create(&cfg) == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "problem", "example1") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "optimizer", "mofo") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "alpha", "50") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "steps", "300") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "lr", "0.01") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "out", dir.c_str()) == MOFO_OK);
    CHECK(mofo_config_set(cfg, "bogus", "1") == MOFO_ERR_CONFIG);

    mofo_run_summary summary;
    REQUIRE(mofo_run_experiment(cfg, &summary) == MOFO_OK);
    CHECK(summary.steps == 300);
    CHECK(summary.final_loss >= 0.0);
    CHECK(std::filesystem::exists(dir + "/trace.csv"));

    REQUIRE(mofo_plot_csv((dir + "/trace.csv").c_str(), "loss_curve",
                          (dir + "/loss.svg").c_str()) == MOFO_OK);
    CHECK(std::filesystem::exists(dir + "/loss.svg"));
    CHECK(mofo_plot_csv((dir + "/trace.csv").c_str(), "nope", (dir + "/x.svg").c_str()) ==
          MOFO_ERR_CONFIG);

    REQUIRE(mofo_config_set(cfg, "alpha_grid", "25,50,100") == MOFO_OK);
    REQUIRE(mofo_run_sweep(cfg) == MOFO_OK);
    CHECK(std::filesystem::exists(dir + "/sweep.csv"));
    REQUIRE(mofo_plot_csv((dir + "/sweep.csv").c_str(), "pareto_scatter",
                          (dir + "/pareto.svg").c_str()) == MOFO_OK);

    // config-file loading
    {
        std::ofstream ini(dir + "/exp.ini");
        ini << "problem = example1\noptimizer = adam\nsteps = 5\n";
    }
    REQUIRE(mofo_config_load_file(cfg, (dir + "/exp.ini").c_str()) == MOFO_OK);
    REQUIRE(mofo_run_experiment(cfg, &summary) == MOFO_OK);
    CHECK(summary.steps == 5);

    mofo_config_destroy(cfg);
}

TEST_CASE("a numerically failing run reports MOFO_ERR_NUMERIC")
{
    mofo_config* cfg = nullptr;
    REQUIRE(mofo_config_create(&cfg) == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "problem", "example1") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "optimizer", "adam") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "lr", "1e300") == MOFO_OK);
    REQUIRE(mofo_config_set(cfg, "steps", "20") == MOFO_OK);
    CHECK(mofo_run_experiment(cfg, nullptr) == MOFO_ERR_NUMERIC);
    mofo_config_destroy(cfg);
}
