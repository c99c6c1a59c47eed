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

#include "mofo/mofo.h"

#include <cstring>
#include <string>

#include "mofo/acceptance.hpp"
#include "mofo/errors.hpp"
#include "mofo/filter.hpp"
#include "mofo/harness.hpp"
#include "mofo/optimizers.hpp"
#include "mofo/partition.hpp"
#include "mofo/rng.hpp"

namespace
{

thread_local std::string g_last_error;

mofo_status to_status(const std::exception& e)
{
    g_last_error = e.what();
    if (dynamic_cast<const mofo::NumericError*>(&e) != nullptr)
    {
        return MOFO_ERR_NUMERIC;
    }
    return MOFO_ERR_CONFIG;
}

template <typename Fn>
mofo_status guarded(Fn&& fn)
{
    try
    {
        return fn();
    }
    catch (const std::exception& e)
    {
        return to_status(e);
    }
}

}  // namespace

struct mofo_layout
{
    mofo::LayoutPtr layout;
};

struct mofo_vector
{
    mofo::PartitionedVector vec;
};

struct mofo_mask
{
    mofo::FilterMask mask;
};

struct mofo_optimizer
{
    mofo::Optimizer opt;
    mofo::CounterRng rng;
};

struct mofo_config
{
    mofo::ExperimentConfig cfg;
};

extern "C" {

const char* mofo_last_error(void)
{
    return g_last_error.c_str();
}

mofo_status mofo_layout_create(const char* const* names, const size_t* lengths, size_t n_blocks,
                               mofo_layout** out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (names == nullptr || lengths == nullptr || out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            std::vector<std::pair<std::string, std::size_t>> blocks;
            blocks.reserve(n_blocks);
            for (size_t k = 0; k < n_blocks; ++k)
            {
                blocks.emplace_back(names[k], lengths[k]);
            }
            *out = new mofo_layout{mofo::BlockLayout::make(blocks)};
            return MOFO_OK;
        });
}

void mofo_layout_destroy(mofo_layout* layout)
{
    delete layout;
}

size_t mofo_layout_dim(const mofo_layout* layout)
{
    return layout != nullptr ? layout->layout->dim() : 0;
}

size_t mofo_layout_block_count(const mofo_layout* layout)
{
    return layout != nullptr ? layout->layout->block_count() : 0;
}

size_t mofo_layout_block_length(const mofo_layout* layout, size_t k)
{
    if (layout == nullptr || k >= layout->layout->block_count())
    {
        return 0;
    }
    return layout->layout->block(k).length;
}

mofo_status mofo_vector_create(const mofo_layout* layout, const double* values, size_t n,
                               mofo_vector** out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (layout == nullptr || out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            if (values == nullptr)
            {
                *out = new mofo_vector{mofo::PartitionedVector(layout->layout)};
            }
            else
            {
                *out = new mofo_vector{mofo::PartitionedVector(
                    layout->layout, std::vector<double>(values, values + n))};
            }
            return MOFO_OK;
        });
}

void mofo_vector_destroy(mofo_vector* v)
{
    delete v;
}

size_t mofo_vector_size(const mofo_vector* v)
{
    return v != nullptr ? v->vec.size() : 0;
}

mofo_status mofo_vector_copy_out(const mofo_vector* v, double* dst, size_t n)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (v == nullptr || dst == nullptr || n < v->vec.size())
            {
                throw mofo::ConfigError("destination too small or null");
            }
            std::memcpy(dst, v->vec.values().data(), v->vec.size() * sizeof(double));
            return MOFO_OK;
        });
}

mofo_status mofo_vector_get_block(const mofo_vector* v, size_t k, double* dst, size_t cap)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (v == nullptr || dst == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            const auto block = v->vec.block(k);
            if (cap < block.size())
            {
                throw mofo::ConfigError("destination too small");
            }
            std::memcpy(dst, block.data(), block.size() * sizeof(double));
            return MOFO_OK;
        });
}

mofo_status mofo_vector_set_block(mofo_vector* v, size_t k, const double* src, size_t n)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (v == nullptr || src == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            const auto block = v->vec.block(k);
            if (n != block.size())
            {
                throw mofo::ConfigError("source length does not match the block");
            }
            std::memcpy(block.data(), src, n * sizeof(double));
            v->vec.ensure_finite("set_block");
            return MOFO_OK;
        });
}

mofo_status mofo_top_alpha_mask(const mofo_vector* v, double alpha_pct, mofo_mask** out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (v == nullptr || out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            *out = new mofo_mask{mofo::top_alpha_mask(v->vec, alpha_pct)};
            return MOFO_OK;
        });
}

void mofo_mask_destroy(mofo_mask* mask)
{
    delete mask;
}

mofo_status mofo_mask_bits(const mofo_mask* mask, uint8_t* dst, size_t cap)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (mask == nullptr || dst == nullptr || cap < mask->mask.bits().size())
            {
                throw mofo::ConfigError("destination too small or null");
            }
            std::memcpy(dst, mask->mask.bits().data(), mask->mask.bits().size());
            return MOFO_OK;
        });
}

mofo_status mofo_mask_block_count(const mofo_mask* mask, size_t k, size_t* out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (mask == nullptr || out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            if (k >= mask->mask.set_counts().size())
            {
                throw mofo::ConfigError("block index out of range");
            }
            *out = mask->mask.set_counts()[k];
            return MOFO_OK;
        });
}

mofo_status mofo_top_alpha_norm(const mofo_vector* v, double alpha_pct, double* out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (v == nullptr || out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            *out = mofo::top_alpha_norm(v->vec, alpha_pct);
            return MOFO_OK;
        });
}

mofo_status mofo_apply_mask(const mofo_vector* v, const mofo_mask* mask, mofo_vector** out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (v == nullptr || mask == nullptr || out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            *out = new mofo_vector{mofo::apply_mask(v->vec, mask->mask)};
            return MOFO_OK;
        });
}

void mofo_hyperparams_init(mofo_hyperparams* params)
{
    if (params == nullptr)
    {
        return;
    }
    const mofo::HyperParams defaults;
    params->beta1 = defaults.beta1;
    params->beta2 = defaults.beta2;
    params->epsilon = defaults.epsilon;
    params->alpha_pct = defaults.alpha_pct;
    params->lion_beta1 = defaults.lion_beta1;
    params->lion_beta2 = defaults.lion_beta2;
    params->lion_weight_decay = defaults.lion_weight_decay;
    params->ratio_epsilon = defaults.ratio_epsilon;
    params->lr = defaults.lr.base;
    params->lr_schedule = 0;
    params->theory_mode = 0;
}

mofo_status mofo_optimizer_create(const char* kind, const mofo_layout* layout,
                                  const mofo_hyperparams* params, uint64_t seed,
                                  mofo_optimizer** out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (kind == nullptr || layout == nullptr || params == nullptr || out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            mofo::HyperParams hp;
            hp.beta1 = params->beta1;
            hp.beta2 = params->beta2;
            hp.epsilon = params->epsilon;
            hp.alpha_pct = params->alpha_pct;
            hp.lion_beta1 = params->lion_beta1;
            hp.lion_beta2 = params->lion_beta2;
            hp.lion_weight_decay = params->lion_weight_decay;
            hp.ratio_epsilon = params->ratio_epsilon;
            hp.lr.base = params->lr;
            hp.lr.kind = params->lr_schedule == 1 ? mofo::LrSchedule::Kind::inverse_sqrt
                                                  : mofo::LrSchedule::Kind::constant;
            hp.theory_mode = params->theory_mode != 0;
            *out = new mofo_optimizer{
                mofo::Optimizer(mofo::optimizer_kind_from_string(kind), layout->layout, hp),
                mofo::CounterRng(seed)};
            return MOFO_OK;
        });
}

void mofo_optimizer_destroy(mofo_optimizer* opt)
{
    delete opt;
}

mofo_status mofo_optimizer_step(mofo_optimizer* opt, mofo_vector* theta, const mofo_vector* grad,
                                mofo_step_report* report)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (opt == nullptr || theta == nullptr || grad == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            const mofo::StepReport rep = opt->opt.step(theta->vec, grad->vec, &opt->rng);
            if (report != nullptr)
            {
                report->lr = rep.lr;
                report->max_abs_update = rep.max_abs_update;
                report->update_l2 = rep.update_l2;
                report->lemma_bound = rep.lemma_bound;
                report->bound_violated = rep.bound_violated ? 1 : 0;
                report->mask_count_total = rep.mask_count_total;
            }
            return MOFO_OK;
        });
}

mofo_status mofo_config_create(mofo_config** out)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (out == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            *out = new mofo_config{};
            return MOFO_OK;
        });
}

void mofo_config_destroy(mofo_config* cfg)
{
    delete cfg;
}

mofo_status mofo_config_load_file(mofo_config* cfg, const char* path)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (cfg == nullptr || path == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            cfg->cfg = mofo::ExperimentConfig::load_file(path);
            return MOFO_OK;
        });
}

mofo_status mofo_config_set(mofo_config* cfg, const char* key, const char* value)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (cfg == nullptr || key == nullptr || value == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            cfg->cfg.set(key, value);
            return MOFO_OK;
        });
}

mofo_status mofo_run_experiment(const mofo_config* cfg, mofo_run_summary* summary)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (cfg == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            const mofo::RunResult result = mofo::run_experiment(cfg->cfg);
            if (summary != nullptr)
            {
                summary->steps = static_cast<int64_t>(result.record.rows.size());
                summary->final_loss = result.record.summary.final_loss;
                summary->final_aux_loss = result.record.summary.final_aux_loss;
                summary->final_distance = result.record.summary.final_distance;
                summary->min_grad_inf = result.record.summary.min_grad_inf;
                summary->significant_change_fraction =
                    result.record.summary.significant_change_fraction;
                summary->lemma_violations = result.record.lemma_violations;
            }
            return MOFO_OK;
        });
}

mofo_status mofo_run_sweep(const mofo_config* cfg)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (cfg == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            mofo::run_pareto_sweep(cfg->cfg);
            return MOFO_OK;
        });
}

mofo_status mofo_plot_csv(const char* csv_path, const char* kind, const char* svg_path)
{
    return guarded(
        [&]() -> mofo_status
        {
            if (csv_path == nullptr || kind == nullptr || svg_path == nullptr)
            {
                throw mofo::ConfigError("null argument");
            }
            const mofo::PlotKind plot_kind = mofo::plot_kind_from_string(kind);
            if (plot_kind == mofo::PlotKind::pareto_scatter)
            {
                mofo::emit_plot(mofo::read_sweep_csv(csv_path), plot_kind, svg_path);
            }
            else
            {
                mofo::emit_plot(mofo::read_record_csv(csv_path), plot_kind, svg_path);
            }
            return MOFO_OK;
        });
}

mofo_status mofo_run_acceptance(const char* out_dir, mofo_report_line_fn line_cb, void* user,
                                int* failures)
{
    return guarded(
        [&]() -> mofo_status
        {
            const std::string dir = out_dir != nullptr ? out_dir : "mofo_verify_out";
            const int failed = mofo::acceptance::run_all(
                dir,
                [&](const mofo::acceptance::CheckResult& result)
                {
                    if (line_cb != nullptr)
                    {
                        const std::string line = mofo::acceptance::format_line(result);
                        line_cb(line.c_str(), user);
                    }
                });
            if (failures != nullptr)
            {
                *failures = failed;
            }
            if (failed > 0)
            {
                g_last_error = std::to_string(failed) + " verification checks failed";
                return MOFO_ERR_ACCEPTANCE;
            }
            return MOFO_OK;
        });
}

}  // extern "C"
