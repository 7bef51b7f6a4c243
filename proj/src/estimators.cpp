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
#include "phaselimit/estimators.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "phaselimit/asympt.hpp"
#include "phaselimit/errors.hpp"
#include "phaselimit/variational.hpp"

namespace phaselimit::estimators {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

void check_model(const MziModel &model) {
    require(model.visibility > 0 && model.visibility <= 1, ErrorCode::invalid_argument,
            "mzi: visibility must lie in (0, 1]");
}

double fold(double phi) { return phi - 2 * pi * std::floor((phi + pi) / (2 * pi)); }

} // namespace

double MziModel::p_plus(double phi) const { return 0.5 * (1 + visibility * std::cos(phi)); }
double MziModel::p_minus(double phi) const { return 0.5 * (1 - visibility * std::cos(phi)); }

double mzi_mse(const MziModel &model, double phi) {
    const double a = std::fabs(fold(phi));
    return model.p_plus(phi) * a * a + model.p_minus(phi) * (pi - a) * (pi - a);
}

double mzi_amse(const MziModel &model) { return pi * pi / 3 - 2 * model.visibility; }

std::vector<double> open_phase_grid(std::size_t count) {
    std::vector<double> g(count);
    for (std::size_t j = 0; j < count; ++j)
        g[j] = -pi + 2 * pi * (double(j) + 0.5) / double(count);
    return g;
}

BiasFunction mzi_bias(const MziModel &model, double phi_r, std::span<const double> phi_grid) {
    check_model(model);
    // '-' lands on phi_r + pi folded into [phi_r - pi, phi_r + pi)
    const double plus_est = phi_r + fold(0.0 - phi_r);
    const double minus_est = phi_r + fold(pi - phi_r);
    BiasFunction b;
    b.reference = phi_r;
    for (double phi : phi_grid) {
        const double dp = -0.5 * model.visibility * std::sin(phi); // d p_plus / d phi
        b.phi.push_back(phi);
        b.values.push_back(model.p_plus(phi) * plus_est + model.p_minus(phi) * minus_est - phi);
        b.derivative.push_back(dp * (plus_est - minus_est) - 1.0);
    }
    return b;
}

double biased_crb(double fisher, double bias, double bias_deriv, int m) {
    require(m >= 1, ErrorCode::invalid_argument, "biased_crb: m must be >= 1");
    const double lead = 1.0 + bias_deriv;
    if (lead == 0.0)
        return bias * bias;
    require(fisher >= 0, ErrorCode::invalid_argument, "biased_crb: negative Fisher information");
    if (fisher == 0.0)
        return inf;
    return lead * lead / (double(m) * fisher) + bias * bias;
}

MziCurves mzi_curves(const MziModel &model, std::span<const double> phi_grid) {
    check_model(model);
    const double v = model.visibility;
    MziCurves out;
    out.amse = mzi_amse(model);
    out.qcrb = 1.0 / v;
    out.hhb = 1.0 / (2.0 * out.delta_n);
    for (double phi : phi_grid) {
        MziRow r;
        r.phi = phi;
        r.p_plus = model.p_plus(phi);
        r.mse = mzi_mse(model, phi);
        r.rmse = std::sqrt(r.mse);
        const double s = std::sin(phi), c = std::cos(phi);
        const double denom = 1 - v * v * c * c;
        r.fisher = denom > 0 ? v * v * s * s / denom : 0.0;
        r.crb = r.fisher > 0 ? 1.0 / std::sqrt(r.fisher) : inf;
        const double one[1] = {phi};
        const auto b = mzi_bias(model, phi, one);
        r.bias = b.values[0];
        r.bias_derivative = b.derivative[0];
        r.crb_biased = std::sqrt(biased_crb(r.fisher, r.bias, r.bias_derivative, 1));
        // +-1 observable: Delta O / |d<O>/dphi|
        r.error_propagation = std::fabs(s) > 0 ? std::sqrt(denom) / (v * std::fabs(s)) : inf;
        out.rows.push_back(r);
    }
    return out;
}

std::vector<ReferenceRow> reference_curves(std::span<const double> nbar_grid, double p) {
    const auto &k = asympt::constants();
    std::vector<ReferenceRow> rows;
    for (double n : nbar_grid) {
        require(n > 0, ErrorCode::invalid_argument, "reference_curves: <N> must be positive");
        ReferenceRow r;
        r.nbar = n;
        r.anisimov = 1.0 / std::sqrt(n * (n + 2));
        r.nu = std::pow(n, 1.0 - p);
        r.error_propagation = r.nu / (2 * n);
        r.heisenberg = 1.0 / (n + 1);
        r.k_a_bound = k.k_A / (n + 1);
        r.k_c_bound = k.k_C / (n + 1);
        rows.push_back(r);
    }
    return rows;
}

ProbeScalingPlan make_plan(long long m, double mu, double delta_exp) {
    require(m >= 1 && mu > 0 && delta_exp > 0, ErrorCode::invalid_argument,
            "probe plan: need m >= 1, mu > 0, delta > 0");
    ProbeScalingPlan p{m, mu, delta_exp, 0, ProbeRegime::small_mu};
    if (std::pow(mu, delta_exp) > double(m)) {
        p.regime = ProbeRegime::large_mu;
        p.n = mu;
    } else {
        p.n = std::pow(double(m) * mu, 1.0 / (1.0 + delta_exp));
    }
    return p;
}

ProbeScalingResult probe_scaling_uncertainty(const ProbeScalingPlan &plan, double k_floor) {
    require(plan.n >= 2 && plan.n >= plan.mu, ErrorCode::precondition, "probe scaling: need n >= max(2, mu)");
    const double mm = double(plan.m) * plan.mu;
    ProbeScalingResult r;
    const auto opt = variational::solve_for_mean(variational::CostName::theta_sq, canonical::SpectrumKind::nonneg,
                                                 plan.n - 1.0);
    r.single_state_delta = opt.delta;
    // every copy found in the vacuum: no information, error uniform
    r.failure_probability =
        plan.regime == ProbeRegime::large_mu ? 0.0 : std::exp(double(plan.m) * std::log1p(-plan.mu / plan.n));
    const double p = r.failure_probability;
    r.upper_bound = std::sqrt((1 - p) * opt.delta * opt.delta + p * pi * pi / 3);
    r.heis_floor = (k_floor > 0 ? k_floor : asympt::constants().k_C) / (mm + 1);
    r.scaled = r.upper_bound * std::pow(mm, 1.0 / (1.0 + plan.delta_exp));
    return r;
}

} // namespace phaselimit::estimators
