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
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace phaselimit::povm {

using CMatrix = Eigen::MatrixXcd;

struct DegenerateSystem {
    std::vector<long> eigenvalues; // per basis vector |n, d>, grouped by n ascending
    std::vector<int> labels;       // d for each basis vector, 0-based

    static DegenerateSystem from_degeneracies(const std::vector<long> &values, const std::vector<int> &degeneracy);

    [[nodiscard]] std::size_t dimension() const { return eigenvalues.size(); }
    [[nodiscard]] std::vector<long> spectrum() const; // distinct, ascending
    [[nodiscard]] long spread() const;                // max n - min n
};

enum class PovmKind { discrete_phase, covariant_seed };

// Estimates sit on phi_k = 2 pi k / K. A covariant set stores only the seed M_0;
// element k is e^{-iG phi_k} M_0 e^{iG phi_k}.
struct PovmSet {
    PovmKind kind = PovmKind::discrete_phase;
    std::size_t grid_size = 0;
    std::vector<CMatrix> operators;
};

CMatrix element(const PovmSet &povm, const DegenerateSystem &system, std::size_t k);
double grid_phase(std::size_t k, std::size_t grid_size);
// phi_k mapped into [phi_r - pi, phi_r + pi)
double estimate_value(std::size_t k, std::size_t grid_size, double phi_r);

struct Validity {
    double normalization_error = 0; // trace or completeness deviation
    double min_eigenvalue = 0;
    double hermiticity_error = 0;
};

Validity check_povm(const PovmSet &povm, const DegenerateSystem &system);
Validity check_density(const CMatrix &rho);

CMatrix shifted(const CMatrix &rho, const DegenerateSystem &system, double phi); // e^{-iG phi} rho e^{iG phi}

PovmSet random_povm(const DegenerateSystem &system, std::size_t grid_size, std::uint64_t seed, int rank = 2);
CMatrix random_density(const DegenerateSystem &system, std::uint64_t seed, int rank = 0);
PovmSet canonical_povm(const DegenerateSystem &system, std::size_t grid_size);

// p(theta_j) averaged over phi on the grid: (1/K) sum_k Tr(M_{k+j} rho_{phi_k})
std::vector<double> error_distribution(const PovmSet &povm, const CMatrix &rho, const DegenerateSystem &system);
std::vector<double> generator_distribution(const CMatrix &rho, const DegenerateSystem &system);

PovmSet covariant_average(const PovmSet &povm, const DegenerateSystem &system);

struct Reduction {
    CMatrix rho_s;
    DegenerateSystem system_s; // nondegenerate, same spectrum
    double covariance_error = 0; // max |<n,d|M_0|n,d'> - delta/K|
};

Reduction nondegenerate_reduction(const PovmSet &covariant, const CMatrix &rho0, const DegenerateSystem &system);

double expected_estimate(const PovmSet &povm, const CMatrix &rho, const DegenerateSystem &system, double phi,
                         double phi_r = 0.0);

struct ContinuityReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double max_ratio = 0; // largest |difference| / bound over eps != 0
    double mean_abs_generator = 0;
};

ContinuityReport continuity_check(const PovmSet &povm, const CMatrix &rho, const DegenerateSystem &system,
                                  const std::vector<double> &phis, const std::vector<double> &eps_grid);

// Continuous covariant measurement with density seed (K / 2 pi) M_0.
struct BiasIdentity {
    double bias = 0;          // b_phi(phi)
    double bias_derivative = 0; // b'_phi(phi) by central differences in phi
    double predicted = 0;     // -2 pi p(phi + pi | phi)
};

BiasIdentity bias_identity(const PovmSet &covariant, const CMatrix &rho, const DegenerateSystem &system, double phi);

struct MziExample {
    DegenerateSystem system;
    CMatrix rho0;
    PovmSet povm; // '+' -> 0, '-' -> pi
};

MziExample mzi_example(double visibility, std::size_t grid_size = 8);

} // namespace phaselimit::povm
