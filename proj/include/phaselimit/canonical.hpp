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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace phaselimit::canonical {

enum class SpectrumKind { nonneg, symmetric };

struct Spectrum {
    SpectrumKind kind = SpectrumKind::nonneg;
    std::size_t cutoff = 0; // max |eigenvalue| retained

    [[nodiscard]] std::size_t size() const {
        return kind == SpectrumKind::nonneg ? cutoff + 1 : 2 * cutoff + 1;
    }
    [[nodiscard]] long eigenvalue(std::size_t index) const {
        return kind == SpectrumKind::nonneg ? static_cast<long>(index)
                                            : static_cast<long>(index) - static_cast<long>(cutoff);
    }
    [[nodiscard]] double weight(std::size_t index) const {
        const long e = eigenvalue(index);
        return static_cast<double>(e < 0 ? -e : e);
    }
};

struct ProbeState {
    Spectrum spectrum;
    std::vector<double> amplitudes; // indexed as Spectrum::eigenvalue
};

struct ErrorDistribution {
    std::vector<double> grid; // theta_j = -pi + 2 pi j / size
    std::vector<double> density;
    double normalization_check = 0; // trapezoid integral of density
};

struct GeneratorDistribution {
    std::vector<long> eigenvalues;
    std::vector<double> probabilities;
};

struct Metrics {
    double amse = 0;      // <Theta^2>
    double holevo = 0;    // Re<e^{i Theta}>^{-2} - 1, +inf when Re <= 0
    double delta1_sq = 0; // <f1>
    double delta2_sq = 0; // <f2>
    double delta3_sq = 0; // <f3>
};

// <e^{i m Theta}> for m = 0 .. m_max.
std::vector<std::complex<double>> moments(const ProbeState &state, std::size_t m_max);

// Moments beyond the span are taken as zero (state support within the span).
Metrics metrics_from_moments(std::span<const std::complex<double>> moms);

// Metrics of a state using 1 - <cos m Theta> computed without cancellation.
Metrics state_metrics(const ProbeState &state);

// Mean of the constraint weight: <N> or <|J|>.
double mean_weight(const ProbeState &state);

std::vector<std::complex<double>> unbias_rotation(std::span<const std::complex<double>> moms);

ErrorDistribution canonical_distribution(const ProbeState &state, std::size_t grid_size);
// grid size used when none is given: power of two >= max(8 * levels, 4096)
std::size_t default_grid_size(const ProbeState &state);

struct EntropyLength {
    double entropy = 0;
    double length = 0;
};

EntropyLength entropy_and_length(const ErrorDistribution &dist);
double entropy_generator(const GeneratorDistribution &dist);
GeneratorDistribution generator_distribution(const ProbeState &state);

struct BoundCheck {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double margin = 0; // lhs - rhs for a lhs >= rhs inequality
    bool holds = true;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    [[nodiscard]] std::size_t violations() const;
    void add(std::string name, double lhs, double rhs, double tolerance = 1e-10);
};

BoundReport verify_bounds(const ProbeState &state);
BoundReport max_entropy_bound_checks();

// Closed forms for the maximum-entropy families.
double thermal_entropy(double nbar);

struct LaplaceFamily {
    double normalization; // sum_n e^{-beta |n - g|}
    double mean_abs;      // <|G - g|>
    double entropy;
};

// g with fractional offset r = ceil(g) - g in [0, 1).
LaplaceFamily laplace_closed_form(double beta, double r);
LaplaceFamily laplace_direct(double beta, double r);

double k_a();

} // namespace phaselimit::canonical
