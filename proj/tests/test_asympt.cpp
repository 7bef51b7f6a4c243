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
#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "phaselimit/asympt.hpp"
#include "phaselimit/errors.hpp"
#include "phaselimit/specfun.hpp"
#include "phaselimit/variational.hpp"

using namespace phaselimit;
using namespace phaselimit::asympt;
using canonical::SpectrumKind;

namespace {

constexpr double pi = std::numbers::pi;

double round4(double v) { return std::round(v * 1e4) / 1e4; }

double lag_sum(const std::vector<double> &a, std::size_t m) {
    long double s = 0;
    for (std::size_t i = 0; i + m < a.size(); ++i)
        s += static_cast<long double>(a[i]) * a[i + m];
    return static_cast<double>(s);
}

double max_diff(const std::vector<double> &a, const std::vector<double> &b) {
    // b may carry a longer, negligible tail
    double d = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const double u = i < a.size() ? a[i] : 0.0, v = i < b.size() ? b[i] : 0.0;
        d = std::max(d, std::fabs(u - v));
    }
    return d;
}

variational::OptimalPoint eigen_point(SpectrumKind kind, double z) {
    variational::Spectrum s;
    s.kind = kind;
    s.cutoff = 100;
    return variational::solve_point(variational::make_cost(variational::CostName::f1), s, 1.0 / z);
}

// symmetric amplitudes re-centred so index k is j = k - cutoff of the wider state
std::vector<double> recentre(const canonical::ProbeState &s, std::size_t cutoff) {
    std::vector<double> out(2 * cutoff + 1, 0.0);
    const auto k = static_cast<long>(s.spectrum.cutoff);
    for (long j = -k; j <= k; ++j)
        out[std::size_t(j + long(cutoff))] = s.amplitudes[std::size_t(j + k)];
    return out;
}

} // namespace

TEST_CASE("constants") {
    const auto &c = constants();
    CHECK(round4(c.k_A) == doctest::Approx(0.5593).epsilon(1e-12));
    CHECK(round4(c.k_C) == doctest::Approx(1.3761).epsilon(1e-12));
    CHECK(round4(c.k_C_prime) == doctest::Approx(0.7916).epsilon(1e-12));
    CHECK(c.gamma == doctest::Approx(-c.z_a / std::cbrt(2.0)));
    CHECK(c.gamma_prime == doctest::Approx(-c.z_a_prime / std::cbrt(2.0)));
}

TEST_CASE("series coefficients") {
    const auto &b = holevo_expansion().coefficients;
    const double bp[] = {1.8936, 2.1514, 2.0424, 1.9050, 1.8906};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(round4(b[i]) == doctest::Approx(bp[i]).epsilon(1e-12));
        CHECK(b[i] > 0);
    }
    const auto &d = symmetric_expansion().coefficients;
    const double dp[] = {0.6266, 1.2533, 1.4868, 0.9341, -0.6292};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(round4(d[i]) == doctest::Approx(dp[i]).epsilon(1e-12));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(d[i] > 0);
    CHECK(d[4] < 0);
    const auto &c = constants();
    CHECK(b[0] == doctest::Approx(c.k_C * c.k_C).epsilon(1e-14));
    CHECK(d[0] == doctest::Approx(c.k_C_prime * c.k_C_prime).epsilon(1e-14));
    CHECK(holevo_series(99.0, 1).value == doctest::Approx(b[0] / 1e4).epsilon(1e-15));
    CHECK(symmetric_series(50.0, 1).value == doctest::Approx(d[0] / (101.0 * 101.0)).epsilon(1e-15));
    CHECK(holevo_series(5.0).regime_warning);
    CHECK_FALSE(holevo_series(10.0).regime_warning);
    CHECK(symmetric_series(3.0).regime_warning);
    CHECK_THROWS_AS(holevo_series(1.0, 6), Error);
}

TEST_CASE("nonnegative Bessel states") {
    for (double z : {20.0, 50.0, 200.0, 1000.0}) {
        const auto s = bessel_state_nonneg(z);
        const auto &a = s.state.amplitudes;
        CHECK(s.dropped_mass < 1e-28);
        // psi_{n-1} + psi_{n+1} = 2 (alpha + beta n) psi_n with psi_{-1} = 0
        const double beta = 1.0 / z, alpha = (s.x + 1.0) / z;
        for (std::size_t n = 0; n + 1 < a.size(); ++n) {
            const double lhs = (n ? a[n - 1] : 0.0) + a[n + 1];
            CHECK(std::fabs(lhs - 2 * (alpha + beta * double(n)) * a[n]) <= 1e-9);
        }
        const double nbar = canonical::mean_weight(s.state);
        CHECK(std::fabs(s.nbar - nbar) <= 1e-9 * nbar);
        CHECK(std::fabs(s.e_itheta - lag_sum(a, 1)) <= 1e-12);
        CHECK(std::fabs(s.e_2itheta - lag_sum(a, 2)) <= 1e-12);
        CHECK(std::fabs(s.e_itheta - (s.x + s.nbar + 1) / z) <= 1e-12);
        const double ratio = specfun::bessel_j(s.x + 1, z) / specfun::bessel_j_dorder(s.x, z);
        CHECK(std::fabs(s.e_itheta - ratio) <= 1e-8);

        const auto p = eigen_point(SpectrumKind::nonneg, z);
        CHECK(max_diff(a, p.state.amplitudes) <= 1e-8);
        CHECK(p.mean_constraint == doctest::Approx(s.nbar).epsilon(1e-9));
        const double holevo = 1 / (s.e_itheta * s.e_itheta) - 1;
        CHECK(p.delta_H * p.delta_H == doctest::Approx(holevo).epsilon(1e-7));
        CHECK(p.alpha == doctest::Approx((s.x + 1) / z / 1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(bessel_state_nonneg(2.0), Error);
}

TEST_CASE("symmetric Bessel states") {
    for (double z : {20.0, 50.0, 200.0, 1000.0}) {
        const auto s = bessel_state_symmetric(z);
        CHECK(std::fabs(specfun::bessel_j(s.x - 1, z) - specfun::bessel_j(s.x + 1, z)) <= 1e-9);
        const auto &a = s.state.amplitudes;
        const double jbar = canonical::mean_weight(s.state);
        CHECK(std::fabs(s.jbar_abs - jbar) <= 1e-9 * jbar);
        CHECK(std::fabs(s.e_itheta - lag_sum(a, 1)) <= 1e-12);
        CHECK(std::fabs(s.e_2itheta - lag_sum(a, 2)) <= 1e-12);

        const auto p = eigen_point(SpectrumKind::symmetric, z);
        const std::size_t k = std::max(p.cutoff, s.state.spectrum.cutoff);
        CHECK(max_diff(recentre(s.state, k), recentre(p.state, k)) <= 1e-8);
        CHECK(p.delta_1 * p.delta_1 == doctest::Approx(2 * (1 - s.e_itheta)).epsilon(1e-7));
        CHECK(p.mean_constraint == doctest::Approx(s.jbar_abs).epsilon(1e-9));
    }
    CHECK_THROWS_AS(bessel_state_symmetric(1.0), Error);
}

TEST_CASE("series against the exact solution") {
    // remainder shrinks with every added term
    const auto s = bessel_state_nonneg(1e4);
    const double holevo = 1 / (s.e_itheta * s.e_itheta) - 1;
    double prev = 1;
    for (std::size_t k = 1; k <= 5; ++k) {
        const double err = std::fabs(holevo - holevo_series(s.nbar, k).value) / holevo;
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-11);

    const auto y = bessel_state_symmetric(3e5);
    CHECK(y.jbar_abs > 30);
    const double sym = 2 * (1 - y.e_itheta);
    CHECK(symmetric_series(y.jbar_abs).value == doctest::Approx(sym).epsilon(1e-8));
    double sprev = 1;
    for (std::size_t k = 1; k <= 5; ++k) {
        const double err = std::fabs(sym - symmetric_series(y.jbar_abs, k).value) / sym;
        CHECK(err < sprev);
        sprev = err;
    }
}

TEST_CASE("series against the eigensolver") {
    const auto p = variational::solve_for_mean(variational::CostName::f1, SpectrumKind::nonneg, 1000.0);
    CHECK(p.delta_H * p.delta_H == doctest::Approx(holevo_series(p.mean_constraint).value).epsilon(1e-9));
    const auto q = variational::solve_for_mean(variational::CostName::f1, SpectrumKind::symmetric, 1000.0);
    CHECK(q.delta_1 * q.delta_1 == doctest::Approx(symmetric_series(q.mean_constraint).value).epsilon(1e-8));
}

TEST_CASE("asymptotic bounds") {
    const auto &c = constants();
    const double a3 = std::pow(-c.z_a, 3);
    for (double n : {10.0, 100.0, 1000.0}) {
        const auto b = asymptotic_bounds_on_delta(n, SpectrumKind::nonneg);
        const double m = n + 1, lead = c.k_C * c.k_C / (m * m);
        CHECK((b.upper - lead) * m * m * m == doctest::Approx((pi * pi - 4) * a3 / 54).epsilon(1e-9));
        CHECK((lead - b.lower) * std::pow(m, 4) == doctest::Approx(16 * a3 * a3 / 10935).epsilon(1e-7));
    }
    for (double n : {100.0, 1000.0}) {
        const auto p = variational::solve_for_mean(variational::CostName::f1, SpectrumKind::nonneg, n);
        const auto t = variational::solve_for_mean(variational::CostName::theta_sq, SpectrumKind::nonneg, n);
        const auto bp = asymptotic_bounds_on_delta(p.mean_constraint, SpectrumKind::nonneg);
        const auto bt = asymptotic_bounds_on_delta(t.mean_constraint, SpectrumKind::nonneg);
        const double m = n + 1;
        CHECK(bt.lower <= t.delta * t.delta);
        CHECK(t.delta * t.delta <= p.delta * p.delta * (1 + 1e-12));
        CHECK(p.delta * p.delta <= p.delta_3 * p.delta_3);
        // the upper bound holds to its stated order; the next term is O(<N+1>^-4)
        CHECK(std::fabs(p.delta_3 * p.delta_3 - bp.upper) * std::pow(m, 4) < 4.0);
        CHECK(p.delta * p.delta < bp.upper);
    }
    for (double j : {100.0, 1000.0}) {
        const auto p = variational::solve_for_mean(variational::CostName::theta_sq, SpectrumKind::symmetric, j);
        const auto b = asymptotic_bounds_on_delta(p.mean_constraint, SpectrumKind::symmetric);
        const double m = 2 * p.mean_constraint + 1;
        CHECK(b.lower <= p.delta * p.delta);
        CHECK(std::fabs(p.delta * p.delta - b.upper) * std::pow(m, 4) < 4.0);
    }
    CHECK_THROWS_AS(asymptotic_bounds_on_delta(5.0, SpectrumKind::nonneg), Error);
}
