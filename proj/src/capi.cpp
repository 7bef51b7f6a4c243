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
#include "phaselimit/phaselimit.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "phaselimit/asympt.hpp"
#include "phaselimit/errors.hpp"
#include "phaselimit/specfun.hpp"
#include "phaselimit/suites.hpp"
#include "phaselimit/variational.hpp"

#ifndef PHASELIMIT_VERSION
#define PHASELIMIT_VERSION "0.0.0"
#endif

struct pl_report {
    phaselimit::suites::Report body;
};

namespace {

using namespace phaselimit;

thread_local std::string last_error;

template <class F> pl_status guarded(F &&f) {
    try {
        f();
        last_error.clear();
        return PL_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return static_cast<pl_status>(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
    } catch (const std::exception &e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return PL_ERR_INTERNAL;
}

void need(const void *p, const char *what) { require(p != nullptr, ErrorCode::invalid_argument, what); }

canonical::SpectrumKind to_kind(pl_spectrum s) {
    require(s == PL_SPECTRUM_NONNEG || s == PL_SPECTRUM_SYMMETRIC, ErrorCode::invalid_argument, "unknown spectrum");
    return s == PL_SPECTRUM_NONNEG ? canonical::SpectrumKind::nonneg : canonical::SpectrumKind::symmetric;
}

suites::Metric to_metric(pl_metric m) {
    switch (m) {
    case PL_METRIC_HOLEVO:
        return suites::Metric::holevo;
    case PL_METRIC_F1:
        return suites::Metric::f1;
    case PL_METRIC_F2:
        return suites::Metric::f2;
    case PL_METRIC_F3:
        return suites::Metric::f3;
    case PL_METRIC_DELTA:
        return suites::Metric::delta;
    }
    throw Error(ErrorCode::invalid_argument, "unknown metric");
}

template <class F> pl_status make_report(pl_report **out, F &&build) {
    return guarded([&] {
        need(out, "output pointer is null");
        *out = nullptr;
        auto *r = new pl_report{build()};
        r->body.metadata.insert(r->body.metadata.begin(), {"version", PHASELIMIT_VERSION});
        *out = r;
    });
}

} // namespace

extern "C" {

const char *pl_last_error(void) { return last_error.c_str(); }
const char *pl_version(void) { return PHASELIMIT_VERSION; }

const char *pl_status_name(pl_status status) {
    switch (status) {
    case PL_OK:
        return "ok";
    case PL_ERR_DOMAIN:
        return "domain";
    case PL_ERR_BRACKET:
        return "bracket";
    case PL_ERR_CONVERGENCE:
        return "convergence";
    case PL_ERR_PRECONDITION:
        return "precondition";
    case PL_ERR_CUTOFF:
        return "cutoff";
    case PL_ERR_INVALID_ARGUMENT:
        return "invalid_argument";
    case PL_ERR_INTERNAL:
        return "internal";
    }
    return "unknown";
}

pl_status pl_get_constants(pl_constants *out) {
    return guarded([&] {
        need(out, "output pointer is null");
        const auto &c = asympt::constants();
        *out = {c.k_A, c.k_C, c.k_C_prime, c.z_a, c.z_a_prime};
    });
}

pl_status pl_bessel_j(double order, double z, double *out) {
    return guarded([&] {
        need(out, "output pointer is null");
        *out = specfun::bessel_j(order, z);
    });
}

pl_status pl_holevo_series(double nbar, size_t terms, double *out) {
    return guarded([&] {
        need(out, "output pointer is null");
        *out = asympt::holevo_series(nbar, terms).value;
    });
}

pl_status pl_symmetric_series(double jbar_abs, size_t terms, double *out) {
    return guarded([&] {
        need(out, "output pointer is null");
        *out = asympt::symmetric_series(jbar_abs, terms).value;
    });
}

pl_status pl_solve_for_mean(pl_metric metric, pl_spectrum spectrum, double target, double mean_tolerance,
                            pl_point *out) {
    return guarded([&] {
        need(out, "output pointer is null");
        const auto m = to_metric(metric);
        const auto cost = m == suites::Metric::delta ? variational::CostName::theta_sq
                          : m == suites::Metric::f2  ? variational::CostName::f2
                          : m == suites::Metric::f3  ? variational::CostName::f3
                                                     : variational::CostName::f1;
        const auto p = variational::solve_for_mean(cost, to_kind(spectrum), target, mean_tolerance);
        *out = {p.mean_constraint, p.beta,    p.alpha,    p.delta,    p.delta_H,
                p.delta_1,         p.delta_2, p.delta_3,  p.residual, p.cutoff};
    });
}

void pl_report_free(pl_report *report) { delete report; }

const char *pl_report_name(const pl_report *r) { return r ? r->body.name.c_str() : ""; }
size_t pl_report_meta_count(const pl_report *r) { return r ? r->body.metadata.size() : 0; }

const char *pl_report_meta_key(const pl_report *r, size_t i) {
    return r && i < r->body.metadata.size() ? r->body.metadata[i].first.c_str() : nullptr;
}

const char *pl_report_meta_value(const pl_report *r, size_t i) {
    return r && i < r->body.metadata.size() ? r->body.metadata[i].second.c_str() : nullptr;
}

size_t pl_report_column_count(const pl_report *r) { return r ? r->body.columns.size() : 0; }

const char *pl_report_column_name(const pl_report *r, size_t i) {
    return r && i < r->body.columns.size() ? r->body.columns[i].c_str() : nullptr;
}

size_t pl_report_row_count(const pl_report *r) { return r ? r->body.rows.size() : 0; }

double pl_report_value(const pl_report *r, size_t row, size_t column) {
    if (!r || row >= r->body.rows.size() || column >= r->body.rows[row].size())
        return std::numeric_limits<double>::quiet_NaN();
    return r->body.rows[row][column];
}

size_t pl_report_check_count(const pl_report *r) { return r ? r->body.checks.size() : 0; }

pl_status pl_report_check(const pl_report *r, size_t i, pl_check *out) {
    return guarded([&] {
        need(r, "report is null");
        need(out, "output pointer is null");
        require(i < r->body.checks.size(), ErrorCode::invalid_argument, "check index out of range");
        const auto &c = r->body.checks[i];
        *out = {c.name.c_str(), c.value, c.limit, c.passed ? 1 : 0};
    });
}

size_t pl_report_violations(const pl_report *r) { return r ? r->body.violations() : 0; }

void pl_curve_config_init(pl_curve_config *c) {
    if (!c)
        return;
    const suites::CurveConfig d;
    *c = {PL_METRIC_HOLEVO, PL_SPECTRUM_NONNEG, nullptr, 0,
          d.threads,        d.mean_tolerance,   d.cutoff_factor, d.cutoff_floor,
          d.residual_tolerance};
}

pl_status pl_run_curve(const pl_curve_config *config, pl_report **out) {
    return make_report(out, [&] {
        need(config, "config is null");
        require(config->count == 0 || config->targets, ErrorCode::invalid_argument, "targets pointer is null");
        suites::CurveConfig c;
        c.metric = to_metric(config->metric);
        c.kind = to_kind(config->spectrum);
        c.targets.assign(config->targets, config->targets + config->count);
        c.threads = config->threads;
        c.mean_tolerance = config->mean_tolerance;
        c.cutoff_factor = config->cutoff_factor;
        c.cutoff_floor = config->cutoff_floor;
        c.residual_tolerance = config->residual_tolerance;
        return suites::curve(c);
    });
}

pl_status pl_run_series(pl_spectrum spectrum, const double *targets, size_t count, size_t terms,
                        double mean_tolerance, pl_report **out) {
    return make_report(out, [&] {
        require(count == 0 || targets, ErrorCode::invalid_argument, "targets pointer is null");
        suites::SeriesConfig c;
        c.kind = to_kind(spectrum);
        c.targets.assign(targets, targets + count);
        c.terms = terms;
        c.mean_tolerance = mean_tolerance;
        return suites::series(c);
    });
}

pl_status pl_verify_inequalities(size_t grid_points, pl_report **out) {
    return make_report(out, [&] { return suites::verify_inequalities(grid_points); });
}

pl_status pl_verify_povm(uint64_t seed, size_t instances, pl_report **out) {
    return make_report(out, [&] { return suites::verify_povm(seed, instances); });
}

pl_status pl_verify_bounds(uint64_t seed, size_t states, size_t max_dim, pl_report **out) {
    return make_report(out, [&] { return suites::verify_bounds(seed, states, max_dim); });
}

pl_status pl_verify_mzi(double visibility, size_t grid_points, pl_report **out) {
    return make_report(out, [&] { return suites::verify_mzi(visibility, grid_points); });
}

pl_status pl_verify_probe(double mu, double delta_exp, const long long *m_values, size_t count, pl_report **out) {
    return make_report(out, [&] {
        require(count > 0 && m_values, ErrorCode::invalid_argument, "probe: need at least one m");
        return suites::verify_probe(mu, delta_exp, std::vector<long long>(m_values, m_values + count));
    });
}

} // extern "C"
