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
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phaselimit::estimators {

// Single photon in a Mach-Zehnder interferometer: p(+|phi) = (1 + v cos phi) / 2.
// '+' estimates 0, '-' estimates pi (taken in the window around the reference phase).
struct MziModel {
    double visibility = 1.0;
    [[nodiscard]] double p_plus(double phi) const;
    [[nodiscard]] double p_minus(double phi) const;
};

struct MziRow {
    double phi = 0;
    double p_plus = 0;
    double mse = 0; // exact
    double rmse = 0;
    double fisher = 0;
    double crb = 0;  // F^{-1/2}, +inf where F = 0
    double bias = 0; // b_phi(phi)
    double bias_derivative = 0;
    double crb_biased = 0; // sqrt of the bias-corrected bound, m = 1
    double error_propagation = 0;
};

struct MziCurves {
    std::vector<MziRow> rows;
    double amse = 0; // pi^2/3 - 2v
    double qcrb = 0; // 1/v
    double hhb = 0;  // 1/(2 dN)
    double delta_n = 0.5;
};

double mzi_mse(const MziModel &model, double phi);
double mzi_amse(const MziModel &model);
MziCurves mzi_curves(const MziModel &model, std::span<const double> phi_grid);
// points -pi + 2 pi (j + 1/2) / count
std::vector<double> open_phase_grid(std::size_t count);

struct BiasFunction {
    double reference = 0;
    std::vector<double> phi;
    std::vector<double> values;
    std::vector<double> derivative;
};

// b_{phi_r}(phi) of the two-outcome estimator
BiasFunction mzi_bias(const MziModel &model, double phi_r, std::span<const double> phi_grid);

// [1 + b']^2 / (m F) + b^2
double biased_crb(double fisher, double bias, double bias_deriv, int m = 1);

struct ReferenceRow {
    double nbar = 0;
    double anisimov = 0;          // 1/sqrt(N(N+2))
    double nu = 0;
    double error_propagation = 0; // nu / (2N)
    double heisenberg = 0;        // 1/(N+1)
    double k_a_bound = 0;
    double k_c_bound = 0;
};

// nu = N^{1-p}
std::vector<ReferenceRow> reference_curves(std::span<const double> nbar_grid, double p = 1.5);

enum class ProbeRegime { small_mu, large_mu };

struct ProbeScalingPlan {
    long long m = 1;
    double mu = 1;
    double delta_exp = 1;
    double n = 0;
    ProbeRegime regime = ProbeRegime::small_mu;
};

ProbeScalingPlan make_plan(long long m, double mu, double delta_exp);

struct ProbeScalingResult {
    double upper_bound = 0;
    double heis_floor = 0;
    double failure_probability = 0;
    double single_state_delta = 0; // minimal delta at <N> = n - 1
    double scaled = 0;             // upper_bound (m mu)^{1/(1+delta)}
};

ProbeScalingResult probe_scaling_uncertainty(const ProbeScalingPlan &plan, double k_floor = 0);

} // namespace phaselimit::estimators
