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

/* C interface to the momentum-filtered optimization library. All objects are
 * opaque handles; every fallible call returns a mofo_status and leaves a
 * human-readable message in mofo_last_error() on failure. */

#ifndef MOFO_MOFO_H
#define MOFO_MOFO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MOFO_API __declspec(dllexport)
#else
#define MOFO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mofo_status
{
    MOFO_OK = 0,
    MOFO_ERR_CONFIG = 1,    /* invalid argument or configuration */
    MOFO_ERR_NUMERIC = 2,   /* non-finite values or numerical breakdown */
    MOFO_ERR_ACCEPTANCE = 3 /* verification suite reported failures */
} mofo_status;

/* Message for the most recent failure on this thread. */
MOFO_API const char* mofo_last_error(void);

typedef struct mofo_layout mofo_layout;
typedef struct mofo_vector mofo_vector;
typedef struct mofo_mask mofo_mask;
typedef struct mofo_optimizer mofo_optimizer;
typedef struct mofo_config mofo_config;

/* ---- partitioned vectors ---- */

MOFO_API mofo_status mofo_layout_create(const char* const* names, const size_t* lengths,
                                        size_t n_blocks, mofo_layout** out);
MOFO_API void mofo_layout_destroy(mofo_layout* layout);
MOFO_API size_t mofo_layout_dim(const mofo_layout* layout);
MOFO_API size_t mofo_layout_block_count(const mofo_layout* layout);
MOFO_API size_t mofo_layout_block_length(const mofo_layout* layout, size_t k);

/* values == NULL creates a zero vector; otherwise n must equal the layout
 * dimension and all entries must be finite. */
MOFO_API mofo_status mofo_vector_create(const mofo_layout* layout, const double* values, size_t n,
                                        mofo_vector** out);
MOFO_API void mofo_vector_destroy(mofo_vector* v);
MOFO_API size_t mofo_vector_size(const mofo_vector* v);
MOFO_API mofo_status mofo_vector_copy_out(const mofo_vector* v, double* dst, size_t n);
MOFO_API mofo_status mofo_vector_get_block(const mofo_vector* v, size_t k, double* dst,
                                           size_t cap);
MOFO_API mofo_status mofo_vector_set_block(mofo_vector* v, size_t k, const double* src, size_t n);

/* ---- top-alpha% filter ---- */

MOFO_API mofo_status mofo_top_alpha_mask(const mofo_vector* v, double alpha_pct, mofo_mask** out);
MOFO_API void mofo_mask_destroy(mofo_mask* mask);
MOFO_API mofo_status mofo_mask_bits(const mofo_mask* mask, uint8_t* dst, size_t cap);
MOFO_API mofo_status mofo_mask_block_count(const mofo_mask* mask, size_t k, size_t* out);
MOFO_API mofo_status mofo_top_alpha_norm(const mofo_vector* v, double alpha_pct, double* out);
MOFO_API mofo_status mofo_apply_mask(const mofo_vector* v, const mofo_mask* mask,
                                     mofo_vector** out);

/* ---- optimizers ---- */

typedef struct mofo_hyperparams
{
    double beta1;
    double beta2;
    double epsilon;
    double alpha_pct;
    double lion_beta1;
    double lion_beta2;
    double lion_weight_decay;
    double ratio_epsilon;
    double lr;
    int lr_schedule; /* 0 constant, 1 inverse_sqrt */
    int theory_mode; /* nonzero: epsilon = 0, 0 < beta1 < sqrt(beta2) < 1 */
} mofo_hyperparams;

MOFO_API void mofo_hyperparams_init(mofo_hyperparams* params);

typedef struct mofo_step_report
{
    double lr;
    double max_abs_update;
    double update_l2;
    double lemma_bound;
    int bound_violated;
    size_t mask_count_total;
} mofo_step_report;

/* kind: adam | mofo | lion | mofo_lion | random_bcd | grad_filtered |
 * mv_filtered | gv_filtered | block_freeze_half. The seed drives the
 * stochastic kinds' masks. */
MOFO_API mofo_status mofo_optimizer_create(const char* kind, const mofo_layout* layout,
                                           const mofo_hyperparams* params, uint64_t seed,
                                           mofo_optimizer** out);
MOFO_API void mofo_optimizer_destroy(mofo_optimizer* opt);
MOFO_API mofo_status mofo_optimizer_step(mofo_optimizer* opt, mofo_vector* theta,
                                         const mofo_vector* grad, mofo_step_report* report);

/* ---- experiment harness ---- */

MOFO_API mofo_status mofo_config_create(mofo_config** out);
MOFO_API void mofo_config_destroy(mofo_config* cfg);
MOFO_API mofo_status mofo_config_load_file(mofo_config* cfg, const char* path);
MOFO_API mofo_status mofo_config_set(mofo_config* cfg, const char* key, const char* value);

typedef struct mofo_run_summary
{
    int64_t steps;
    double final_loss;
    double final_aux_loss;
    double final_distance;
    double min_grad_inf;
    double significant_change_fraction;
    int64_t lemma_violations;
} mofo_run_summary;

/* Runs one experiment; writes <out>/trace.csv when an output directory is
 * configured. Identical config and seed produce byte-identical output. */
MOFO_API mofo_status mofo_run_experiment(const mofo_config* cfg, mofo_run_summary* summary);

/* Runs the alpha or lambda grid; writes <out>/sweep.csv and per-cell traces. */
MOFO_API mofo_status mofo_run_sweep(const mofo_config* cfg);

/* Re-renders a CSV (trace or sweep table) as an SVG plot.
 * kind: loss_curve | distance_bar | pareto_scatter. */
MOFO_API mofo_status mofo_plot_csv(const char* csv_path, const char* kind, const char* svg_path);

/* Runs the verification suite. Each result line is passed to `line_cb` (when
 * non-NULL); `failures` (when non-NULL) receives the failed-check count.
 * Returns MOFO_ERR_ACCEPTANCE when any check fails. */
typedef void (*mofo_report_line_fn)(const char* line, void* user);
MOFO_API mofo_status mofo_run_acceptance(const char* out_dir, mofo_report_line_fn line_cb,
                                         void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* MOFO_MOFO_H */
