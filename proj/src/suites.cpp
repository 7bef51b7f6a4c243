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
#include "phaselimit/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phaselimit/asympt.hpp"
#include "phaselimit/errors.hpp"
#include "phaselimit/estimators.hpp"
#include "phaselimit/povm.hpp"
#include "phaselimit/variational.hpp"

namespace phaselimit::suites {

namespace {

constexpr double pi = std::numbers::pi;
using canonical::SpectrumKind;

std::string num(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string kind_name(SpectrumKind k) { return k == SpectrumKind::nonneg ? "nonneg" : "symmetric"; }

double scale_factor(SpectrumKind k, double mean) { return k == SpectrumKind::nonneg ? mean + 1 : 2 * mean + 1; }

} // namespace

std::size_t Report::violations() const {
    return std::size_t(std::count_if(checks.begin(), checks.end(), [](const Check &c) { return !c.passed; }));
}

void Report::meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
void Report::meta(std::string key, double value) { meta(std::move(key), num(value)); }

void Report::expect_le(std::string n, double value, double limit) {
    checks.push_back({std::move(n), value, limit, value <= limit});
}
void Report::expect_ge(std::string n, double value, double limit) {
    checks.push_back({std::move(n), value, limit, value >= limit});
}
void Report::expect(std::string n, bool ok) { checks.push_back({std::move(n), ok ? 1.0 : 0.0, 1.0, ok}); }

Metric parse_metric(const std::string &name) {
    static const std::map<std::string, Metric> names{{"holevo", Metric::holevo}, {"f1", Metric::f1},
                                                     {"f2", Metric::f2},         {"f3", Metric::f3},
                                                     {"delta", Metric::delta},   {"theta_sq", Metric::delta}};
    const auto it = names.find(name);
    require(it != names.end(), ErrorCode::invalid_argument, "unknown metric (holevo, f1, f2, f3, delta)");
    return it->second;
}

std::string metric_name(Metric m) {
    switch (m) {
    case Metric::holevo:
        return "holevo";
    case Metric::f1:
        return "f1";
    case Metric::f2:
        return "f2";
    case Metric::f3:
        return "f3";
    case Metric::delta:
        return "delta";
    }
    return "?";
}

Report curve(const CurveConfig &cfg) {
    using variational::CostName;
    const CostName cost = cfg.metric == Metric::holevo || cfg.metric == Metric::f1 ? CostName::f1
                          : cfg.metric == Metric::f2                               ? CostName::f2
                          : cfg.metric == Metric::f3                               ? CostName::f3
                                                                                   : CostName::theta_sq;
    Report r;
    r.name = "curve";
    r.meta("metric", metric_name(cfg.metric));
    r.meta("spectrum", kind_name(cfg.kind));
    r.meta("points", double(cfg.targets.size()));
    r.meta("mean_tolerance", cfg.mean_tolerance);
    r.meta("cutoff_factor", cfg.cutoff_factor);
    r.meta("cutoff_floor", double(cfg.cutoff_floor));
    r.meta("residual_tolerance", cfg.residual_tolerance);
    r.meta("scaled", cfg.kind == SpectrumKind::nonneg ? "<N+1> * metric" : "<2|J|+1> * metric");
    r.columns = {"mean", "delta", "delta_H", "delta_1", "delta_2", "delta_3", "scaled", "beta", "alpha", "cutoff",
                 "residual"};

    variational::SweepOptions opt;
    opt.threads = cfg.threads;
    opt.mean_tolerance = cfg.mean_tolerance;
    opt.cutoff_factor = cfg.cutoff_factor;
    opt.cutoff_floor = cfg.cutoff_floor;
    const auto sweep = cfg.targets.empty() ? variational::SweepResult{}
                                           : variational::sweep_curve(cost, cfg.kind, cfg.targets, opt);
    r.meta("monotone_beta", sweep.monotone ? "true" : "false");
    r.meta("convex", sweep.convex ? "true" : "false");

    double worst = 0;
    for (const auto &p : sweep.points) {
        double value = 0;
        switch (cfg.metric) {
        case Metric::holevo:
            value = p.delta_H;
            break;
        case Metric::f1:
            value = p.delta_1;
            break;
        case Metric::f2:
            value = p.delta_2;
            break;
        case Metric::f3:
            value = p.delta_3;
            break;
        case Metric::delta:
            value = p.delta;
            break;
        }
        const double m = p.mean_constraint;
        r.rows.push_back({m, p.delta, p.delta_H, p.delta_1, p.delta_2, p.delta_3, value * scale_factor(cfg.kind, m),
                          p.beta, p.alpha, double(p.cutoff), p.residual});
        worst = std::max(worst, p.residual / (1 + std::fabs(p.alpha)));
    }
    if (!sweep.points.empty())
        r.expect_le("eigen_residual", worst, cfg.residual_tolerance);
    return r;
}

Report series(const SeriesConfig &cfg) {
    for (double t : cfg.targets)
        require(t >= 10, ErrorCode::invalid_argument, "series: targets must be >= 10");
    const bool nonneg = cfg.kind == SpectrumKind::nonneg;
    Report r;
    r.name = "series";
    r.meta("spectrum", kind_name(cfg.kind));
    r.meta("quantity", nonneg ? "Holevo variance" : "delta_1^2");
    r.meta("terms", double(cfg.terms));
    const auto &ex = nonneg ? asympt::holevo_expansion() : asympt::symmetric_expansion();
    for (std::size_t i = 0; i < ex.coefficients.size(); ++i)
        r.meta((nonneg ? "b" : "d") + std::to_string(ex.powers[i]), num(ex.coefficients[i], 10));
    r.columns = {"mean", "numeric", "series", "abs_gap", "rel_gap"};
    for (double t : cfg.targets) {
        const auto p = variational::solve_for_mean(variational::CostName::f1, cfg.kind, t, cfg.mean_tolerance);
        const double numeric = nonneg ? p.delta_H * p.delta_H : p.delta_1 * p.delta_1;
        const double s = nonneg ? asympt::holevo_series(p.mean_constraint, cfg.terms).value
                                : asympt::symmetric_series(p.mean_constraint, cfg.terms).value;
        r.rows.push_back({p.mean_constraint, numeric, s, std::fabs(numeric - s), std::fabs(numeric - s) / numeric});
    }
    return r;
}

Report verify_inequalities(std::size_t grid_points) {
    using variational::CostName;
    require(grid_points >= 2, ErrorCode::invalid_argument, "inequalities: need at least two grid points");
    const auto f1 = variational::make_cost(CostName::f1), f2 = variational::make_cost(CostName::f2),
               f3 = variational::make_cost(CostName::f3);
    // rounding bound for a cosine sum: a few ulps of sum |a_k|
    auto slack = [](const variational::CostFunction &c) {
        double s = pi * pi;
        for (double a : c.cosine_coeffs)
            s += std::fabs(a);
        return 8 * std::numeric_limits<double>::epsilon() * s;
    };
    const double s1 = slack(f1), s2 = slack(f2), s3 = slack(f3);
    double m1 = 1e300, m2 = 1e300, m3 = 1e300;
    std::size_t v1 = 0, v2 = 0, v3 = 0;
    Report r;
    r.name = "inequalities";
    r.meta("grid_points", double(grid_points));
    r.meta("grid", "uniform on [-pi, pi] including endpoints");
    r.columns = {"theta", "theta_sq_minus_f1", "theta_sq_minus_f2", "f3_minus_theta_sq"};
    const std::size_t stride = std::max<std::size_t>(1, grid_points / 1000);
    for (std::size_t j = 0; j < grid_points; ++j) {
        const double th = -pi + 2 * pi * double(j) / double(grid_points - 1);
        const double t2 = th * th;
        const double a = t2 - variational::evaluate(f1, th), b = t2 - variational::evaluate(f2, th),
                     c = variational::evaluate(f3, th) - t2;
        m1 = std::min(m1, a);
        m2 = std::min(m2, b);
        m3 = std::min(m3, c);
        v1 += a < -s1;
        v2 += b < -s2;
        v3 += c < -s3;
        if (j % stride == 0 || j + 1 == grid_points)
            r.rows.push_back({th, a, b, c});
    }
    r.meta("rounding_slack_f1", s1);
    r.meta("rounding_slack_f2", s2);
    r.meta("rounding_slack_f3", s3);
    r.meta("min_margin_f1", m1);
    r.meta("min_margin_f2", m2);
    r.meta("min_margin_f3", m3);
    r.expect_le("f1_le_theta_sq_violations", double(v1), 0);
    r.expect_le("f2_le_theta_sq_violations", double(v2), 0);
    r.expect_le("theta_sq_le_f3_violations", double(v3), 0);
    return r;
}

Report verify_povm(std::uint64_t seed, std::size_t instances) {
    using namespace povm;
    Report r;
    r.name = "povm";
    r.meta("seed", double(seed));
    r.meta("instances", double(instances));
    r.meta("max_dimension", 6.0);
    r.meta("tolerance_distribution", 1e-10);
    r.meta("tolerance_generator", 1e-12);
    r.columns = {"instance", "dimension", "grid_size", "covariant_error", "seed_normalization", "seed_min_eig",
                 "reduced_min_eig", "reduced_trace_error", "reduced_distribution_error", "generator_error",
                 "continuity_violations", "continuity_max_ratio", "bias_identity_error"};
    std::mt19937_64 rng(seed);
    const std::vector<double> phis{-3.0, -2.2, -1.1, -0.3, 0.0, 0.7, 1.6, 2.9};
    const std::vector<double> eps{0.0, 1e-6, -1e-6, 1e-4, -1e-3, 0.01, 0.1, -0.5};
    double e1 = 0, en = 0, emin = 0, rmin = 0, rtr = 0, rherm = 0, e2 = 0, eg = 0, eb = 0, cov = 0;
    std::size_t cviol = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        // 2..4 distinct levels from [-3, 3], total dimension <= 6
        std::vector<long> pool{-3, -2, -1, 0, 1, 2, 3};
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t levels = 2 + rng() % 3;
        std::vector<long> values(pool.begin(), pool.begin() + long(levels));
        std::vector<int> deg(levels, 1);
        std::size_t dim = levels;
        for (std::size_t k = 0; k < levels && dim < 6; ++k) {
            const int extra = int(rng() % (7 - dim));
            deg[k] += extra;
            dim += std::size_t(extra);
        }
        const auto sys = DegenerateSystem::from_degeneracies(values, deg);
        const std::size_t kk = std::size_t(4 * sys.spread() + 4) + rng() % 4;
        const auto m = random_povm(sys, kk, rng(), 1 + int(rng() % 3));
        const auto rho = random_density(sys, rng(), 1 + int(rng() % dim));

        const auto avg = covariant_average(m, sys);
        const auto pa = error_distribution(avg, rho, sys), pm = error_distribution(m, rho, sys);
        double d1 = 0;
        for (std::size_t j = 0; j < pa.size(); ++j)
            d1 = std::max(d1, std::fabs(pa[j] - pm[j]));
        const auto va = check_povm(avg, sys);

        const auto red = nondegenerate_reduction(avg, rho, sys);
        const auto vr = check_density(red.rho_s);
        const auto ps = error_distribution(canonical_povm(red.system_s, kk), red.rho_s, red.system_s);
        double d2 = 0;
        for (std::size_t j = 0; j < pa.size(); ++j)
            d2 = std::max(d2, std::fabs(pa[j] - ps[j]));
        const auto g0 = generator_distribution(rho, sys), gs = generator_distribution(red.rho_s, red.system_s);
        double dg = 0;
        for (std::size_t j = 0; j < g0.size(); ++j)
            dg = std::max(dg, std::fabs(g0[j] - gs[j]));

        const auto cont = continuity_check(m, rho, sys, phis, eps);
        const auto bi = bias_identity(avg, rho, sys, 0.0);
        const double berr = std::fabs(bi.bias_derivative - bi.predicted) / std::max(1.0, std::fabs(bi.predicted));

        e1 = std::max(e1, d1);
        en = std::max(en, va.normalization_error);
        emin = std::min(emin, va.min_eigenvalue);
        cov = std::max(cov, red.covariance_error);
        rmin = std::min(rmin, vr.min_eigenvalue);
        rtr = std::max(rtr, vr.normalization_error);
        rherm = std::max(rherm, vr.hermiticity_error);
        e2 = std::max(e2, d2);
        eg = std::max(eg, dg);
        eb = std::max(eb, berr);
        cviol += cont.violations;
        r.rows.push_back({double(i), double(dim), double(kk), d1, va.normalization_error, va.min_eigenvalue,
                          vr.min_eigenvalue, vr.normalization_error, d2, dg, double(cont.violations), cont.max_ratio,
                          berr});
    }
    r.expect_le("covariant_distribution_equality", e1, 1e-10);
    r.expect_le("covariant_normalization", en, 1e-10);
    r.expect_ge("covariant_positivity", emin, -1e-10);
    r.expect_le("seed_covariance", cov, 1e-10);
    r.expect_le("reduced_state_trace", rtr, 1e-10);
    r.expect_le("reduced_state_hermiticity", rherm, 1e-10);
    r.expect_ge("reduced_state_positivity", rmin, -1e-10);
    r.expect_le("reduced_distribution_equality", e2, 1e-10);
    r.expect_le("generator_distribution_preserved", eg, 1e-12);
    r.expect_le("continuity_violations", double(cviol), 0);
    r.expect_le("bias_derivative_identity", eb, 1e-6);
    return r;
}

Report verify_bounds(std::uint64_t seed, std::size_t states, std::size_t max_dim) {
    require(max_dim >= 3, ErrorCode::invalid_argument, "bounds: max_dim must be >= 3");
    Report r;
    r.name = "bounds";
    r.meta("seed", double(seed));
    r.meta("states", double(states));
    r.meta("max_dimension", double(max_dim));
    r.columns = {"state", "symmetric", "levels", "violations", "min_margin"};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::map<std::string, std::pair<std::size_t, double>> by_name; // violations, min margin
    auto absorb = [&](const canonical::BoundReport &rep) {
        double mm = std::numeric_limits<double>::infinity();
        for (const auto &c : rep.checks) {
            // parametrized checks share the part before the first space
            const std::string key = c.name.substr(0, c.name.find(' '));
            auto &slot = by_name.try_emplace(key, 0, std::numeric_limits<double>::infinity()).first->second;
            slot.first += !c.holds;
            slot.second = std::min(slot.second, c.margin);
            mm = std::min(mm, c.margin);
        }
        return mm;
    };
    for (std::size_t i = 0; i < states; ++i) {
        canonical::ProbeState s;
        s.spectrum.kind = i % 2 ? SpectrumKind::symmetric : SpectrumKind::nonneg;
        std::size_t levels;
        if (s.spectrum.kind == SpectrumKind::nonneg) {
            levels = 2 + rng() % (max_dim - 1);
            s.spectrum.cutoff = levels - 1;
        } else {
            s.spectrum.cutoff = 1 + rng() % ((max_dim - 1) / 2);
            levels = 2 * s.spectrum.cutoff + 1;
        }
        s.amplitudes.resize(levels);
        double n2 = 0;
        for (auto &a : s.amplitudes) {
            a = g(rng);
            n2 += a * a;
        }
        for (auto &a : s.amplitudes)
            a /= std::sqrt(n2);
        const auto rep = canonical::verify_bounds(s);
        const double mm = absorb(rep);
        r.rows.push_back({double(i), double(i % 2), double(levels), double(rep.violations()), mm});
    }
    absorb(canonical::max_entropy_bound_checks());
    for (const auto &[name, v] : by_name) {
        r.meta("min_margin_" + name, v.second);
        r.expect_le(name + "_violations", double(v.first), 0);
    }
    return r;
}

Report verify_mzi(double visibility, std::size_t grid_points) {
    using namespace estimators;
    require(grid_points >= 4, ErrorCode::invalid_argument, "mzi: need at least four grid points");
    const MziModel model{visibility};
    const auto grid = open_phase_grid(grid_points);
    const auto c = mzi_curves(model, grid);
    Report r;
    r.name = "mzi";
    r.meta("visibility", visibility);
    r.meta("grid", "open: -pi + 2 pi (j + 1/2) / count");
    r.meta("grid_points", double(grid_points));
    r.meta("amse", c.amse);
    r.meta("qcrb", c.qcrb);
    r.meta("hhb", c.hhb);
    r.meta("hhb_delta_n", c.delta_n);
    r.columns = {"phi", "p_plus", "mse", "rmse", "fisher", "crb", "bias", "bias_derivative", "crb_biased_mse",
                 "error_propagation"};
    double eb = 0, ep = 0;
    bool near0 = false, near_pi = false;
    for (const auto &row : c.rows) {
        const double bound = biased_crb(row.fisher, row.bias, row.bias_derivative, 1);
        eb = std::max(eb, std::fabs(bound - row.mse));
        ep = std::max(ep, std::fabs(row.crb - row.error_propagation) / row.crb);
        if (row.crb > row.rmse) {
            near0 |= std::fabs(row.phi) < pi / 4;
            near_pi |= std::fabs(row.phi) > 3 * pi / 4;
        }
        r.rows.push_back({row.phi, row.p_plus, row.mse, row.rmse, row.fisher, row.crb, row.bias, row.bias_derivative,
                          bound, row.error_propagation});
    }
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double phi) { return mzi_mse(model, phi); };
    const double q =
        (gauss_kronrod<double, 31>::integrate(f, -pi, 0.0) + gauss_kronrod<double, 31>::integrate(f, 0.0, pi)) /
        (2 * pi);
    const double k_a = asympt::constants().k_A;
    r.meta("amse_quadrature", q);
    r.expect_le("biased_crb_equals_mse", eb, 1e-12);
    r.expect_le("crb_equals_error_propagation", ep, 1e-12);
    if (visibility < 1) {
        r.expect("naive_crb_exceeds_rmse_near_0", near0);
        r.expect("naive_crb_exceeds_rmse_near_pi", near_pi);
    }
    r.expect_le("amse_closed_form_vs_quadrature", std::fabs(c.amse - q), 1e-12);
    r.expect_ge("amse_above_heisenberg_bound", c.amse, k_a * k_a / (1.5 * 1.5));
    return r;
}

Report verify_probe(double mu, double delta_exp, std::vector<long long> m_values) {
    using namespace estimators;
    std::sort(m_values.begin(), m_values.end());
    const double kc = asympt::constants().k_C;
    Report r;
    r.name = "probe";
    r.meta("mu", mu);
    r.meta("delta_exp", delta_exp);
    r.meta("single_copy_state", "minimal-delta state at <N> = n - 1, shifted up by one");
    r.meta("failure_cost", "pi^2/3");
    r.columns = {"m", "n", "large_mu", "failure_probability", "single_state_delta", "upper_bound", "scaled",
                 "heis_floor"};
    double last_ub = std::numeric_limits<double>::infinity(), last_gap = last_ub;
    bool monotone = true, approaching = true;
    for (long long m : m_values) {
        const auto plan = make_plan(m, mu, delta_exp);
        const auto res = probe_scaling_uncertainty(plan);
        r.rows.push_back({double(m), plan.n, plan.regime == ProbeRegime::large_mu ? 1.0 : 0.0,
                          res.failure_probability, res.single_state_delta, res.upper_bound, res.scaled,
                          res.heis_floor});
        r.expect_le("scaled_within_10pct_of_kC_m" + std::to_string(m), std::fabs(res.scaled / kc - 1), 0.1);
        monotone &= res.upper_bound < last_ub;
        approaching &= std::fabs(res.scaled - kc) < last_gap;
        last_ub = res.upper_bound;
        last_gap = std::fabs(res.scaled - kc);
    }
    r.expect("upper_bound_decreasing_in_m", monotone);
    r.expect("scaled_bound_approaches_kC", approaching);
    return r;
}

} // namespace phaselimit::suites
