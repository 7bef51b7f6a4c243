// Copyright 2026 The phaselimit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef PHASELIMIT_H
#define PHASELIMIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PL_API __declspec(dllexport)
#else
#define PL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
    PL_OK = 0,
    PL_ERR_DOMAIN = 1,
    PL_ERR_BRACKET = 2,
    PL_ERR_CONVERGENCE = 3,
    PL_ERR_PRECONDITION = 4,
    PL_ERR_CUTOFF = 5,
    PL_ERR_INVALID_ARGUMENT = 6,
    PL_ERR_INTERNAL = 7
} pl_status;

typedef enum pl_spectrum { PL_SPECTRUM_NONNEG = 0, PL_SPECTRUM_SYMMETRIC = 1 } pl_spectrum;

// holevo and f1 share the f1 optimum; delta is the exact theta^2 problem
typedef enum pl_metric {
    PL_METRIC_HOLEVO = 0,
    PL_METRIC_F1 = 1,
    PL_METRIC_F2 = 2,
    PL_METRIC_F3 = 3,
    PL_METRIC_DELTA = 4
} pl_metric;

// Message for the last failing call on this thread; "" after success.
PL_API const char *pl_last_error(void);
PL_API const char *pl_version(void);
PL_API const char *pl_status_name(pl_status status);

typedef struct pl_constants {
    double k_A;
    double k_C;
    double k_C_prime;
    double z_A;       // first zero of Ai
    double z_A_prime; // first zero of Ai'
} pl_constants;

PL_API pl_status pl_get_constants(pl_constants *out);

PL_API pl_status pl_bessel_j(double order, double z, double *out);
PL_API pl_status pl_holevo_series(double nbar, size_t terms, double *out);
PL_API pl_status pl_symmetric_series(double jbar_abs, size_t terms, double *out);

typedef struct pl_point {
    double mean;
    double beta;
    double alpha;
    double delta;
    double delta_H;
    double delta_1;
    double delta_2;
    double delta_3;
    double residual;
    size_t cutoff;
} pl_point;

PL_API pl_status pl_solve_for_mean(pl_metric metric, pl_spectrum spectrum, double target, double mean_tolerance,
                                   pl_point *out);

// Reports: metadata, a numeric table and named checks.
typedef struct pl_report pl_report;

typedef struct pl_check {
    const char *name; // owned by the report
    double value;
    double limit;
    int passed;
} pl_check;

PL_API void pl_report_free(pl_report *report);
PL_API const char *pl_report_name(const pl_report *report);
PL_API size_t pl_report_meta_count(const pl_report *report);
PL_API const char *pl_report_meta_key(const pl_report *report, size_t index);
PL_API const char *pl_report_meta_value(const pl_report *report, size_t index);
PL_API size_t pl_report_column_count(const pl_report *report);
PL_API const char *pl_report_column_name(const pl_report *report, size_t index);
PL_API size_t pl_report_row_count(const pl_report *report);
// NaN when out of range
PL_API double pl_report_value(const pl_report *report, size_t row, size_t column);
PL_API size_t pl_report_check_count(const pl_report *report);
PL_API pl_status pl_report_check(const pl_report *report, size_t index, pl_check *out);
PL_API size_t pl_report_violations(const pl_report *report);

typedef struct pl_curve_config {
    pl_metric metric;
    pl_spectrum spectrum;
    const double *targets; // strictly increasing
    size_t count;
    size_t threads; // 0: hardware concurrency
    double mean_tolerance;
    double cutoff_factor;
    size_t cutoff_floor;
    double residual_tolerance;
} pl_curve_config;

PL_API void pl_curve_config_init(pl_curve_config *config);
PL_API pl_status pl_run_curve(const pl_curve_config *config, pl_report **out);
PL_API pl_status pl_run_series(pl_spectrum spectrum, const double *targets, size_t count, size_t terms,
                               double mean_tolerance, pl_report **out);

PL_API pl_status pl_verify_inequalities(size_t grid_points, pl_report **out);
PL_API pl_status pl_verify_povm(uint64_t seed, size_t instances, pl_report **out);
PL_API pl_status pl_verify_bounds(uint64_t seed, size_t states, size_t max_dim, pl_report **out);
PL_API pl_status pl_verify_mzi(double visibility, size_t grid_points, pl_report **out);
PL_API pl_status pl_verify_probe(double mu, double delta_exp, const long long *m_values, size_t count,
                                 pl_report **out);

#ifdef __cplusplus
}
#endif

#endif
