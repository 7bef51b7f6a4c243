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
#include "phaselimit/povm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "phaselimit/errors.hpp"

namespace phaselimit::povm {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

Eigen::VectorXcd phases(const DegenerateSystem &s, double phi) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t a = 0; a < s.dimension(); ++a)
        d(Eigen::Index(a)) = std::polar(1.0, -double(s.eigenvalues[a]) * phi);
    return d;
}

// diag(d) m diag(d)^dagger
CMatrix conjugate(const CMatrix &m, const Eigen::VectorXcd &d) {
    return d.asDiagonal() * m * d.conjugate().asDiagonal();
}

double trace_product(const CMatrix &a, const CMatrix &b) {
    return (a.cwiseProduct(b.transpose())).sum().real();
}

CMatrix random_ginibre(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g;
    CMatrix b(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            b(i, j) = cplx(g(rng), g(rng));
    return b;
}

void check_system(const DegenerateSystem &s) {
    require(s.dimension() > 0 && s.labels.size() == s.dimension(), ErrorCode::invalid_argument,
            "povm: malformed system");
}

} // namespace

DegenerateSystem DegenerateSystem::from_degeneracies(const std::vector<long> &values,
                                                     const std::vector<int> &degeneracy) {
    require(!values.empty() && values.size() == degeneracy.size(), ErrorCode::invalid_argument,
            "DegenerateSystem: values and degeneracies must match");
    std::map<long, int> d;
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(degeneracy[i] >= 1, ErrorCode::invalid_argument, "DegenerateSystem: degeneracy must be >= 1");
        require(!d.count(values[i]), ErrorCode::invalid_argument, "DegenerateSystem: repeated eigenvalue");
        d[values[i]] = degeneracy[i];
    }
    DegenerateSystem s;
    for (const auto &[n, dn] : d)
        for (int k = 0; k < dn; ++k) {
            s.eigenvalues.push_back(n);
            s.labels.push_back(k);
        }
    return s;
}

std::vector<long> DegenerateSystem::spectrum() const {
    std::vector<long> v = eigenvalues;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

long DegenerateSystem::spread() const {
    const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
    return *hi - *lo;
}

double grid_phase(std::size_t k, std::size_t grid_size) { return 2.0 * pi * double(k) / double(grid_size); }

double estimate_value(std::size_t k, std::size_t grid_size, double phi_r) {
    double v = grid_phase(k, grid_size) - phi_r;
    v -= 2.0 * pi * std::floor((v + pi) / (2.0 * pi));
    return phi_r + v;
}

CMatrix element(const PovmSet &povm, const DegenerateSystem &system, std::size_t k) {
    require(k < povm.grid_size, ErrorCode::invalid_argument, "povm: element index out of range");
    if (povm.kind == PovmKind::discrete_phase)
        return povm.operators[k];
    return conjugate(povm.operators.front(), phases(system, grid_phase(k, povm.grid_size)));
}

CMatrix shifted(const CMatrix &rho, const DegenerateSystem &system, double phi) {
    return conjugate(rho, phases(system, phi));
}

Validity check_povm(const PovmSet &povm, const DegenerateSystem &system) {
    check_system(system);
    const auto n = Eigen::Index(system.dimension());
    require(povm.grid_size >= 2, ErrorCode::invalid_argument, "povm: grid too small");
    require(povm.kind == PovmKind::covariant_seed ? povm.operators.size() == 1
                                                  : povm.operators.size() == povm.grid_size,
            ErrorCode::invalid_argument, "povm: operator count does not match the kind");
    Validity v;
    CMatrix total = CMatrix::Zero(n, n);
    double min_eig = std::numeric_limits<double>::infinity(), herm = 0;
    for (std::size_t k = 0; k < povm.grid_size; ++k) {
        const CMatrix m = element(povm, system, k);
        require(m.rows() == n && m.cols() == n, ErrorCode::invalid_argument, "povm: operator size mismatch");
        total += m;
        herm = std::max(herm, (m - m.adjoint()).cwiseAbs().maxCoeff());
        if (k == 0 || povm.kind == PovmKind::discrete_phase) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        }
    }
    v.normalization_error = (total - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    v.min_eigenvalue = min_eig;
    v.hermiticity_error = herm;
    return v;
}

Validity check_density(const CMatrix &rho) {
    require(rho.rows() == rho.cols() && rho.rows() > 0, ErrorCode::invalid_argument, "density: not square");
    Validity v;
    v.normalization_error = std::abs(rho.trace() - cplx(1.0));
    v.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    v.min_eigenvalue = es.eigenvalues().minCoeff();
    return v;
}

PovmSet random_povm(const DegenerateSystem &system, std::size_t grid_size, std::uint64_t seed, int rank) {
    check_system(system);
    require(grid_size >= 2 && rank >= 1, ErrorCode::invalid_argument, "random_povm: bad grid or rank");
    std::mt19937_64 rng(seed);
    const auto n = Eigen::Index(system.dimension());
    std::vector<CMatrix> a(grid_size);
    CMatrix s = CMatrix::Zero(n, n);
    for (auto &m : a) {
        const CMatrix b = random_ginibre(rng, n, rank);
        m = b * b.adjoint();
        s += m;
    }
    // M_k = S^{-1/2} A_k S^{-1/2}
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
    const CMatrix w = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                      es.eigenvectors().adjoint();
    PovmSet p;
    p.kind = PovmKind::discrete_phase;
    p.grid_size = grid_size;
    for (auto &m : a) {
        CMatrix x = w * m * w;
        p.operators.push_back(0.5 * (x + x.adjoint()));
    }
    return p;
}

CMatrix random_density(const DegenerateSystem &system, std::uint64_t seed, int rank) {
    check_system(system);
    std::mt19937_64 rng(seed);
    const auto n = Eigen::Index(system.dimension());
    const CMatrix b = random_ginibre(rng, n, rank > 0 ? rank : n);
    CMatrix rho = b * b.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

PovmSet canonical_povm(const DegenerateSystem &system, std::size_t grid_size) {
    check_system(system);
    require(grid_size > std::size_t(system.spread()), ErrorCode::invalid_argument,
            "canonical_povm: grid must exceed the spectral spread");
    const auto n = Eigen::Index(system.dimension());
    CMatrix c = CMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            if (system.labels[std::size_t(a)] == system.labels[std::size_t(b)])
                c(a, b) = 1.0 / double(grid_size);
    return {PovmKind::covariant_seed, grid_size, {c}};
}

std::vector<double> error_distribution(const PovmSet &povm, const CMatrix &rho, const DegenerateSystem &system) {
    check_system(system);
    const std::size_t k_max = povm.grid_size;
    std::vector<CMatrix> elems(k_max), rhos(k_max);
    for (std::size_t k = 0; k < k_max; ++k) {
        elems[k] = element(povm, system, k);
        rhos[k] = shifted(rho, system, grid_phase(k, k_max));
    }
    std::vector<double> p(k_max, 0.0);
    for (std::size_t j = 0; j < k_max; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < k_max; ++k)
            s += trace_product(elems[(k + j) % k_max], rhos[k]);
        p[j] = s / double(k_max);
    }
    return p;
}

std::vector<double> generator_distribution(const CMatrix &rho, const DegenerateSystem &system) {
    check_system(system);
    const auto spec = system.spectrum();
    std::vector<double> p(spec.size(), 0.0);
    for (std::size_t a = 0; a < system.dimension(); ++a) {
        const auto i = std::size_t(std::lower_bound(spec.begin(), spec.end(), system.eigenvalues[a]) - spec.begin());
        p[i] += rho(Eigen::Index(a), Eigen::Index(a)).real();
    }
    return p;
}

PovmSet covariant_average(const PovmSet &povm, const DegenerateSystem &system) {
    check_system(system);
    require(povm.grid_size >= std::size_t(4 * system.spread() + 4), ErrorCode::invalid_argument,
            "covariant_average: grid size must be >= 4 (max n - min n) + 4");
    const auto v = check_povm(povm, system);
    require(v.normalization_error <= 1e-10, ErrorCode::precondition, "covariant_average: input POVM is not normalized");
    const auto n = Eigen::Index(system.dimension());
    CMatrix m0 = CMatrix::Zero(n, n);
    for (std::size_t k = 0; k < povm.grid_size; ++k)
        m0 += conjugate(element(povm, system, k), phases(system, -grid_phase(k, povm.grid_size)));
    m0 /= double(povm.grid_size);
    return {PovmKind::covariant_seed, povm.grid_size, {0.5 * (m0 + m0.adjoint())}};
}

Reduction nondegenerate_reduction(const PovmSet &covariant, const CMatrix &rho0, const DegenerateSystem &system) {
    check_system(system);
    require(covariant.kind == PovmKind::covariant_seed && covariant.operators.size() == 1,
            ErrorCode::invalid_argument, "nondegenerate_reduction: a covariant seed is required");
    const auto dim = Eigen::Index(system.dimension());
    require(rho0.rows() == dim && rho0.cols() == dim, ErrorCode::invalid_argument,
            "nondegenerate_reduction: state size mismatch");
    const CMatrix &m0 = covariant.operators.front();
    const double k = double(covariant.grid_size);
    Reduction r;
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b)
            if (system.eigenvalues[std::size_t(a)] == system.eigenvalues[std::size_t(b)])
                r.covariance_error = std::max(r.covariance_error,
                                              std::abs(m0(a, b) - cplx(a == b ? 1.0 / k : 0.0)));
    require(r.covariance_error <= 1e-10, ErrorCode::precondition,
            "nondegenerate_reduction: seed violates <n,d|M_0|n,d'> = delta/K");

    const auto spec = system.spectrum();
    r.system_s = DegenerateSystem::from_degeneracies(spec, std::vector<int>(spec.size(), 1));
    auto index = [&](long n) { return Eigen::Index(std::lower_bound(spec.begin(), spec.end(), n) - spec.begin()); };
    const auto ns = Eigen::Index(spec.size());
    r.rho_s = CMatrix::Zero(ns, ns);
    // rho_s(n', n) = K sum_{d, d'} <n',d'|rho0|n,d> <n,d|M_0|n',d'>
    for (Eigen::Index a = 0; a < dim; ++a)     // |n, d>
        for (Eigen::Index b = 0; b < dim; ++b) // |n', d'>
            r.rho_s(index(system.eigenvalues[std::size_t(b)]), index(system.eigenvalues[std::size_t(a)])) +=
                k * rho0(b, a) * m0(a, b);
    return r;
}

double expected_estimate(const PovmSet &povm, const CMatrix &rho, const DegenerateSystem &system, double phi,
                         double phi_r) {
    const CMatrix r = shifted(rho, system, phi);
    double s = 0;
    for (std::size_t k = 0; k < povm.grid_size; ++k)
        s += estimate_value(k, povm.grid_size, phi_r) * trace_product(element(povm, system, k), r);
    return s;
}

ContinuityReport continuity_check(const PovmSet &povm, const CMatrix &rho, const DegenerateSystem &system,
                                  const std::vector<double> &phis, const std::vector<double> &eps_grid) {
    check_system(system);
    ContinuityReport rep;
    for (std::size_t a = 0; a < system.dimension(); ++a)
        rep.mean_abs_generator += std::fabs(double(system.eigenvalues[a])) * rho(Eigen::Index(a), Eigen::Index(a)).real();
    for (double phi : phis) {
        const double e0 = expected_estimate(povm, rho, system, phi);
        for (double eps : eps_grid) {
            const double diff = std::fabs(expected_estimate(povm, rho, system, phi + eps) - e0);
            const double bound = 4.0 * pi * std::sqrt(2.0 * rep.mean_abs_generator * std::fabs(eps));
            ++rep.samples;
            if (diff > bound + 1e-12)
                ++rep.violations;
            if (bound > 0)
                rep.max_ratio = std::max(rep.max_ratio, diff / bound);
        }
    }
    return rep;
}

BiasIdentity bias_identity(const PovmSet &covariant, const CMatrix &rho, const DegenerateSystem &system, double phi) {
    require(covariant.kind == PovmKind::covariant_seed, ErrorCode::invalid_argument,
            "bias_identity: a covariant seed is required");
    check_system(system);
    // density p(theta) = sum_k C_k e^{-ik theta}
    const CMatrix &m0 = covariant.operators.front();
    std::map<long, cplx> c;
    const double scale = double(covariant.grid_size) / (2.0 * pi);
    for (std::size_t a = 0; a < system.dimension(); ++a)
        for (std::size_t b = 0; b < system.dimension(); ++b)
            c[system.eigenvalues[a] - system.eigenvalues[b]] +=
                scale * m0(Eigen::Index(a), Eigen::Index(b)) * rho(Eigen::Index(b), Eigen::Index(a));
    // <Phi>^{phi_r}_{phi_r + s} = phi_r + sum_{k != 0} C_k e^{iks} 2 pi i (-1)^k / k
    auto mean_offset = [&](double s) {
        cplx sum = 0;
        for (const auto &[k, ck] : c)
            if (k != 0)
                sum += ck * std::polar(1.0, double(k) * s) * cplx(0.0, 2.0 * pi * (k % 2 ? -1.0 : 1.0) / double(k));
        return sum.real();
    };
    BiasIdentity out;
    out.bias = mean_offset(0.0);
    const double h = 1e-4;
    // b_{phi_r}(phi_r + s) = mean_offset(s) - s
    out.bias_derivative = (mean_offset(h) - mean_offset(-h)) / (2 * h) - 1.0;
    cplx p_pi = 0;
    for (const auto &[k, ck] : c)
        p_pi += ck * (k % 2 ? -1.0 : 1.0);
    out.predicted = -2.0 * pi * p_pi.real();
    (void)phi; // covariant statistics do not depend on phi
    return out;
}

MziExample mzi_example(double visibility, std::size_t grid_size) {
    require(visibility >= 0 && visibility <= 1, ErrorCode::invalid_argument, "mzi_example: visibility outside [0, 1]");
    require(grid_size >= 8 && grid_size % 2 == 0, ErrorCode::invalid_argument, "mzi_example: grid must be even, >= 8");
    MziExample ex;
    ex.system = DegenerateSystem::from_degeneracies({0, 1}, {1, 1});
    ex.rho0 = CMatrix(2, 2);
    ex.rho0 << 0.5, 0.5 * visibility, 0.5 * visibility, 0.5;
    ex.povm.kind = PovmKind::discrete_phase;
    ex.povm.grid_size = grid_size;
    ex.povm.operators.assign(grid_size, CMatrix::Zero(2, 2));
    ex.povm.operators[0] << 0.5, 0.5, 0.5, 0.5;
    ex.povm.operators[grid_size / 2] << 0.5, -0.5, -0.5, 0.5;
    return ex;
}

} // namespace phaselimit::povm
