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

namespace phaselimit::eigensolve {

// Symmetric band matrix; diagonals[k] holds entries (i, i+k), length dimension - k.
struct BandedSymmetric {
    std::size_t dimension = 0;
    std::vector<std::vector<double>> diagonals;

    BandedSymmetric() = default;
    BandedSymmetric(std::size_t dim, std::size_t bandwidth);

    [[nodiscard]] std::size_t bandwidth() const { return diagonals.empty() ? 0 : diagonals.size() - 1; }
    [[nodiscard]] double norm_bound() const;
    void multiply(const double *x, double *y) const;
};

// Full symmetric matrix, row-major.
struct DenseSymmetric {
    std::size_t dimension = 0;
    std::vector<double> entries;

    DenseSymmetric() = default;
    explicit DenseSymmetric(std::size_t dim) : dimension(dim), entries(dim * dim, 0.0) {}

    double &at(std::size_t i, std::size_t j) { return entries[i * dimension + j]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return entries[i * dimension + j]; }
    // writes (i, j) and (j, i)
    void set(std::size_t i, std::size_t j, double v);
    [[nodiscard]] double norm_bound() const;
    void multiply(const double *x, double *y) const;
};

// Symmetric Toeplitz matrix plus a diagonal, applied through circulant embedding.
class ToeplitzPlusDiagonal {
  public:
    ToeplitzPlusDiagonal(std::vector<double> first_column, std::vector<double> diagonal);

    [[nodiscard]] std::size_t dimension() const { return column_.size(); }
    [[nodiscard]] const std::vector<double> &first_column() const { return column_; }
    [[nodiscard]] const std::vector<double> &diagonal() const { return diag_; }
    [[nodiscard]] double norm_bound() const { return norm_; }
    void multiply(const double *x, double *y) const;
    [[nodiscard]] DenseSymmetric to_dense() const;

  private:
    std::vector<double> column_, diag_;
    std::vector<double> symbol_; // circulant eigenvalues
    std::size_t embed_ = 0;
    double norm_ = 0;
};

enum class Which { largest, smallest };

struct EigenPair {
    double value = 0;
    std::vector<double> vector;
    double residual = 0;
    int iterations = 0;
};

struct SolveOptions {
    const std::vector<double> *start = nullptr;
    // SPD band approximation of the operator (shifted to the smallest end) used
    // as a preconditioner by the Toeplitz solver.
    const BandedSymmetric *preconditioner = nullptr;
    double tolerance = 1e-13; // target residual relative to the norm bound
};

EigenPair extremal_eigenpair(const BandedSymmetric &a, Which which);
EigenPair extremal_eigenpair(const DenseSymmetric &a, Which which, const SolveOptions &opt = {});
EigenPair extremal_eigenpair(const ToeplitzPlusDiagonal &a, Which which,
                             const SolveOptions &opt = {});

// Number of eigenvalues of a strictly greater than sigma (band LDL^T inertia).
std::size_t count_above(const BandedSymmetric &a, double sigma);

// LDL^T factorization of an SPD band matrix with solve.
class BandLdl {
  public:
    // Factor s*(a) + shift*I; returns false if a nonpositive pivot appears.
    bool factor(const BandedSymmetric &a, double s, double shift);
    void solve(const double *rhs, double *x) const;
    [[nodiscard]] std::size_t dimension() const { return n_; }

  private:
    std::size_t n_ = 0, b_ = 0;
    std::vector<double> l_; // row i: L(i, i-b .. i-1)
    std::vector<double> d_;
};

} // namespace phaselimit::eigensolve
