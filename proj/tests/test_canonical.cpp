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
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>
#include <doctest.h>

#include "phaselimit/canonical.hpp"
#include "phaselimit/errors.hpp"

using namespace phaselimit;
using namespace phaselimit::canonical;

namespace {

constexpr double pi = std::numbers::pi;

ProbeState make_state(SpectrumKind kind, std::vector<double> amps) {
    ProbeState s;
    s.spectrum.kind = kind;
    s.spectrum.cutoff = kind == SpectrumKind::nonneg ? amps.size() - 1 : (amps.size() - 1) / 2;
    double n = 0;
    for (double a : amps)
        n += a * a;
    for (auto &a : amps)
        a /= std::sqrt(n);
    s.amplitudes = std::move(amps);
    return s;
}

ProbeState random_state(std::mt19937_64 &rng, SpectrumKind kind, std::size_t levels) {
    std::normal_distribution<double> g;
    std::vector<double> a(levels);
    for (auto &v : a)
        v = g(rng);
    return make_state(kind, a);
}

// p(theta) by direct summation
double density_at(const ProbeState &s, double th) {
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        z += s.amplitudes[i] * std::polar(1.0, static_cast<double>(s.spectrum.eigenvalue(i)) * th);
    return std::norm(z) / (2 * pi);
}

template <class F> double integrate(F f) {
    double s = 0;
    const int panels = 64;
    for (int k = 0; k < panels; ++k) {
        const double a = -pi + 2 * pi * k / panels, b = a + 2 * pi / panels;
        s += boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
    }
    return s;
}

} // namespace

TEST_CASE("single eigenstate") {
    const auto s = make_state(SpectrumKind::nonneg, {0, 0, 1, 0});
    const auto d = canonical_distribution(s, 64);
    for (double p : d.density)
        CHECK(std::fabs(p - 1 / (2 * pi)) <= 1e-15);
    const auto m = state_metrics(s);
    CHECK(m.amse == doctest::Approx(pi * pi / 3).epsilon(1e-15));
    CHECK(std::isinf(m.holevo));
    const auto moms = moments(s, 3);
    const auto mm = metrics_from_moments(moms);
    CHECK(mm.amse == doctest::Approx(pi * pi / 3).epsilon(1e-15));
    CHECK(std::isinf(mm.holevo));
    const auto el = entropy_and_length(d);
    CHECK(std::fabs(el.entropy - std::log(2 * pi)) <= 1e-14);
    CHECK(std::fabs(el.length - 2 * pi) <= 1e-13);
    CHECK(entropy_generator(generator_distribution(s)) == 0.0);
    const auto rep = verify_bounds(s);
    CHECK(rep.violations() == 0);
    CHECK(std::fabs(rep.checks[0].margin) <= 1e-12);
}

TEST_CASE("equal two-level superposition") {
    const auto s = make_state(SpectrumKind::nonneg, {1, 1});
    const auto d = canonical_distribution(s, 4096);
    for (std::size_t j = 0; j < d.grid.size(); ++j)
        CHECK(std::fabs(d.density[j] - (1 + std::cos(d.grid[j])) / (2 * pi)) <= 1e-15);
    CHECK(std::fabs(d.normalization_check - 1) <= 1e-12);
    const auto moms = moments(s, 1);
    CHECK(moms[0].real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(moms[1].real() == doctest::Approx(0.5).epsilon(1e-15));
    const auto m = state_metrics(s);
    CHECK(m.holevo == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(m.delta1_sq == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.delta2_sq == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
    CHECK(m.delta3_sq == doctest::Approx(1.0 + (pi * pi / 4 - 1) / 2).epsilon(1e-14));
    const auto el = entropy_and_length(d);
    CHECK(std::fabs(el.entropy - (std::log(4 * pi) - 1)) <= 1e-8);
    CHECK(std::fabs(el.length - 4 * pi / std::exp(1.0)) <= 1e-7);
    const auto rep = verify_bounds(s);
    CHECK(rep.violations() == 0);
    for (const auto &c : rep.checks)
        if (c.name == "tan_bound") {
            CHECK(std::fabs(c.lhs - std::sqrt(3.0)) <= 1e-14);
            CHECK(std::fabs(c.margin) <= 1e-14);
        }
}

TEST_CASE("moments and AMSE against quadrature") {
    std::mt19937_64 rng(21);
    for (auto kind : {SpectrumKind::nonneg, SpectrumKind::symmetric}) {
        for (std::size_t levels : {3u, 9u, 41u}) {
            const auto s = random_state(rng, kind, levels);
            const auto moms = moments(s, levels - 1);
            for (std::size_t m = 0; m < std::min<std::size_t>(levels, 6); ++m) {
                const double q = integrate([&](double t) { return std::cos(m * t) * density_at(s, t); });
                CHECK(std::fabs(moms[m].real() - q) <= 1e-10);
            }
            const double amse_q = integrate([&](double t) { return t * t * density_at(s, t); });
            CHECK(std::fabs(state_metrics(s).amse - amse_q) <= 1e-10);
            CHECK(std::fabs(metrics_from_moments(moms).amse - amse_q) <= 1e-10);
            const auto d = canonical_distribution(s, default_grid_size(s));
            double gm = 0;
            for (std::size_t j = 0; j < d.grid.size(); ++j)
                gm += std::cos(d.grid[j]) * d.density[j] * 2 * pi / d.grid.size();
            CHECK(std::fabs(gm - moms[1].real()) <= 1e-10);
        }
    }
}

TEST_CASE("deficit metrics agree with moment metrics") {
    std::mt19937_64 rng(3);
    for (std::size_t levels : {2u, 5u, 70u, 300u}) {
        const auto s = random_state(rng, SpectrumKind::nonneg, levels);
        const auto a = state_metrics(s);
        const auto b = metrics_from_moments(moments(s, levels - 1));
        CHECK(a.amse == doctest::Approx(b.amse).epsilon(1e-12));
        CHECK(a.delta1_sq == doctest::Approx(b.delta1_sq).epsilon(1e-12));
        CHECK(a.delta2_sq == doctest::Approx(b.delta2_sq).epsilon(1e-12));
        CHECK(a.delta3_sq == doctest::Approx(b.delta3_sq).epsilon(1e-12));
    }
    // smooth wide state: deficits keep relative accuracy where 1 - c_1 ~ 1e-9
    std::vector<double> a(20000);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = std::sin(pi * (i + 1.0) / (a.size() + 1.0));
    const auto s = make_state(SpectrumKind::nonneg, a);
    const double d1_exact = 1 - std::cos(pi / (a.size() + 1.0));
    CHECK(state_metrics(s).delta1_sq == doctest::Approx(2 * d1_exact).epsilon(1e-10));
}

TEST_CASE("unbias rotation") {
    std::vector<std::complex<double>> m{1.0, 0.6, 0.2};
    const auto r = unbias_rotation(m);
    CHECK(std::abs(r[1] - m[1]) <= 1e-15);
    CHECK(std::abs(r[2] - m[2]) <= 1e-15);
    const double th = 0.7;
    std::vector<std::complex<double>> rot{1.0, 0.6 * std::polar(1.0, th), 0.2 * std::polar(1.0, 2 * th)};
    const auto u = unbias_rotation(rot);
    CHECK(std::fabs(u[1].imag()) <= 1e-14);
    CHECK(u[1].real() > 0);
    CHECK(std::abs(u[2] - 0.2) <= 1e-14);
    CHECK(metrics_from_moments(u).holevo == doctest::Approx(metrics_from_moments(m).holevo).epsilon(1e-13));
    std::vector<std::complex<double>> zero{1.0, 0.0};
    CHECK_THROWS_AS(unbias_rotation(zero), Error);
}

TEST_CASE("generator entropy") {
    GeneratorDistribution flat;
    for (long n = 0; n <= 9; ++n) {
        flat.eigenvalues.push_back(n);
        flat.probabilities.push_back(0.1);
    }
    CHECK(entropy_generator(flat) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
    CHECK(thermal_entropy(1.0) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-15));
    CHECK(thermal_entropy(1.0) < std::log(2.0) + 1.0);
}

TEST_CASE("Laplace family") {
    const auto cf = laplace_closed_form(1.0, 0.0);
    const auto dr = laplace_direct(1.0, 0.0);
    CHECK(cf.entropy == doctest::Approx(dr.entropy).epsilon(1e-12));
    CHECK(cf.mean_abs == doctest::Approx(dr.mean_abs).epsilon(1e-12));
    double prev = 1e300;
    for (double beta : {1.0, 0.1, 0.01, 0.001}) {
        const auto f = laplace_closed_form(beta, 0.0);
        const double margin = std::log(2 * f.mean_abs + 1) + 1 - f.entropy;
        CHECK(margin > 0);
        CHECK(margin < prev);
        prev = margin;
    }
    CHECK(prev < 1e-3);
    const auto rep = max_entropy_bound_checks();
    CHECK(rep.violations() == 0);
    CHECK(rep.checks.size() > 400);
}

TEST_CASE("bounds on random states") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        const auto kind = i % 2 ? SpectrumKind::symmetric : SpectrumKind::nonneg;
        const auto s = random_state(rng, kind, 1 + 2 * (i % 40));
        const auto rep = verify_bounds(s);
        CHECK(rep.violations() == 0);
    }
}

TEST_CASE("grid too small is rejected") {
    const auto s = make_state(SpectrumKind::nonneg, {1, 1, 1, 1});
    CHECK_THROWS_AS(canonical_distribution(s, 16), Error);
    CHECK_THROWS_AS(canonical_distribution(s, 48), Error);
}
