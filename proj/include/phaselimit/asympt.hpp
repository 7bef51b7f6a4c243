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
#include <vector>

#include "phaselimit/canonical.hpp"

namespace phaselimit::asympt {

struct Constants {
    double k_A;
    double k_C;
    double k_C_prime;
    double gamma;       // |z_A| / 2^{1/3}
    double gamma_prime; // |z'_A| / 2^{1/3}
    double z_a;
    double z_a_prime;
};

const Constants &constants();

enum class SeriesVariable { N_plus_1, two_J_plus_1 };

struct SeriesExpansion {
    SeriesVariable variable;
    std::vector<int> powers;
    std::vector<double> coefficients;
    int order_of_remainder;

    // sum of the first `terms` terms at the given <N+1> or <2|J|+1>
    [[nodiscard]] double evaluate(double argument, std::size_t terms) const;
};

// b_2 .. b_10 for |<e^{i Theta}>|^{-2} - 1
const SeriesExpansion &holevo_expansion();
// d_2 .. d_6 for 2(1 - |<e^{i Theta}>|)
const SeriesExpansion &symmetric_expansion();

struct SeriesValue {
    double value;
    bool regime_warning; // argument below 10
};

SeriesValue holevo_series(double nbar, std::size_t terms = 5);
SeriesValue symmetric_series(double jbar_abs, std::size_t terms = 5);

struct BesselStateNonneg {
    canonical::ProbeState state; // A J_{x+n+1}(z), n = 0 .. cutoff
    double x;
    double z;
    double nbar;        // closed form, z J_{x+1} / dJ_x - x - 1 at an exact zero
    double e_itheta;    // J_{x+1} / dJ_x at an exact zero
    double e_2itheta;   // J_{x+2} / (2 dJ_x)
    double dropped_mass; // mass of amplitudes cut below 1e-16 max
};

BesselStateNonneg bessel_state_nonneg(double z);

struct BesselStateSymmetric {
    canonical::ProbeState state; // A J_{x+|j|}(z)
    double x;
    double z;
    double jbar_abs;  // z <e^{i Theta}> - x
    double e_itheta;
    double e_2itheta;
    double dropped_mass;
};

BesselStateSymmetric bessel_state_symmetric(double z);

// Asymptotic bounds on (delta Phi)^2 at <N> or <|J|> >= 10.
struct DeltaBounds {
    double lower;
    double upper;
};

DeltaBounds asymptotic_bounds_on_delta(double mean, canonical::SpectrumKind kind);

} // namespace phaselimit::asympt
