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
#include <string>
#include <variant>
#include <vector>

#include "phaselimit/canonical.hpp"
#include "phaselimit/eigensolve.hpp"

namespace phaselimit::variational {

using canonical::ProbeState;
using canonical::Spectrum;
using canonical::SpectrumKind;

enum class CostName { f1, f2, f3, theta_sq };

struct CostFunction {
    CostName name = CostName::f1;
    std::vector<double> cosine_coeffs; // a_0, a_1, ..., a_M
};

// theta_sq is truncated at M = dimension - 1; the others ignore dimension.
CostFunction make_cost(CostName name, std::size_t dimension = 0);
double evaluate(const CostFunction &cost, double theta);
std::string cost_label(CostName name);

// Banded for f1/f2/f3 (largest eigenvalue), Toeplitz plus diagonal for theta_sq
// (smallest eigenvalue).
using Matrix = std::variant<eigensolve::BandedSymmetric, eigensolve::ToeplitzPlusDiagonal>;

Matrix build_matrix(const CostFunction &cost, const Spectrum &spectrum, double beta);

struct OptimalPoint {
    CostName cost = CostName::f1;
    double beta = 0;
    double alpha = 0; // extremal eigenvalue
    double mean_constraint = 0;
    double delta = 0;
    double delta_H = 0;
    double delta_1 = 0;
    double delta_2 = 0;
    double delta_3 = 0;
    std::size_t cutoff = 0;
    double residual = 0;
    ProbeState state;
};

// Fraction of probability in the top 1% of |eigenvalues|.
double tail_mass(const ProbeState &state);

struct PointOptions {
    bool grow_cutoff = true; // double the cutoff while the tail carries > 1e-12
    std::size_t max_cutoff = std::size_t(1) << 22;
    const std::vector<double> *start = nullptr;
};

OptimalPoint solve_point(const CostFunction &cost, const Spectrum &spectrum, double beta,
                         const PointOptions &opt = {});

struct SweepOptions {
    std::size_t threads = 0; // 0: hardware concurrency
    double mean_tolerance = 1e-6;
    double cutoff_factor = 10.0;
    std::size_t cutoff_floor = 100;
};

struct SweepResult {
    std::vector<OptimalPoint> points;
    bool monotone = true; // beta strictly decreasing in the target
    bool convex = true;   // <f> against the mean is convex
};

// cutoff per target is max(floor, ceil(factor * target)), doubled if insufficient.
SweepResult sweep_curve(CostName cost, SpectrumKind kind, std::span<const double> targets,
                        const SweepOptions &opt = {});

OptimalPoint solve_for_mean(CostName cost, SpectrumKind kind, double target,
                            double mean_tolerance = 1e-6, double cutoff_factor = 10.0,
                            std::size_t cutoff_floor = 100);

double delta3_on_f1_state(const OptimalPoint &point);

std::vector<double> log_spaced(double lo, double hi, std::size_t count);

} // namespace phaselimit::variational
