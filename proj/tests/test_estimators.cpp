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
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include "phaselimit/asympt.hpp"
#include "phaselimit/errors.hpp"
#include "phaselimit/estimators.hpp"

using namespace phaselimit;
using namespace phaselimit::estimators;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("MZI exact error and bounds") {
    const auto grid = open_phase_grid(2000);
    for (double v : {0.5, 0.9, 0.99, 1.0}) {
        const MziModel m{v};
        CHECK(mzi_mse(m, pi / 2) == doctest::Approx(pi * pi / 4).epsilon(1e-15));
        const auto c = mzi_curves(m, grid);
        bool naive_fails_near_0 = false, naive_fails_near_pi = false;
        for (const auto &r : c.rows) {
            CHECK(r.p_plus + m.p_minus(r.phi) == doctest::Approx(1.0));
            CHECK(std::fabs(r.crb_biased - r.rmse) <= 1e-12);
            CHECK(std::fabs(r.crb - r.error_propagation) <= 1e-12 * r.crb);
            if (r.crb > r.rmse) {
                if (std::fabs(r.phi) < 0.5)
                    naive_fails_near_0 = true;
                if (std::fabs(r.phi) > pi - 0.5)
                    naive_fails_near_pi = true;
            }
        }
        if (v < 1) {
            CHECK(naive_fails_near_0);
            CHECK(naive_fails_near_pi);
        }
        CHECK(c.qcrb == doctest::Approx(1 / v));
        CHECK(c.hhb == 1.0);
    }
}

TEST_CASE("MZI average error against quadrature") {
    using boost::math::quadrature::gauss_kronrod;
    for (double v : {0.3, 0.99, 1.0}) {
        const MziModel m{v};
        auto f = [&](double phi) { return mzi_mse(m, phi); };
        const double q = (gauss_kronrod<double, 31>::integrate(f, -pi, 0.0) +
                          gauss_kronrod<double, 31>::integrate(f, 0.0, pi)) /
                         (2 * pi);
        CHECK(std::fabs(mzi_amse(m) - q) < 1e-12);
    }
    CHECK(mzi_amse(MziModel{0.99}) == doctest::Approx(1.3098681).epsilon(1e-7));
    const double k_a = asympt::constants().k_A;
    CHECK(mzi_amse(MziModel{1.0}) >= k_a * k_a / (1.5 * 1.5));
}

TEST_CASE("MZI bias function") {
    const MziModel m{0.9};
    const double phi_r = 0.4;
    const auto grid = open_phase_grid(400);
    const auto b = mzi_bias(m, phi_r, grid);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        CHECK(std::fabs(b.values[i]) <= 2 * pi);
        const double fd = (b.values[i + 1] - b.values[i - 1]) / (grid[i + 1] - grid[i - 1]);
        CHECK(fd == doctest::Approx(b.derivative[i]).epsilon(1e-3));
    }
    // estimates 0 and pi when phi_r in (0, pi)
    CHECK(b.values[100] == doctest::Approx(pi * m.p_minus(grid[100]) - grid[100]));
}

TEST_CASE("biased Cramer-Rao bound") {
    CHECK(biased_crb(2.0, 0.0, 0.0, 5) == doctest::Approx(0.1));
    CHECK(biased_crb(0.0, 0.3, -1.0, 1) == doctest::Approx(0.09));
    CHECK(biased_crb(4.0, 0.3, -1.0, 3) == doctest::Approx(0.09));
    CHECK(std::isinf(biased_crb(0.0, 0.1, 0.5, 1)));
    CHECK_THROWS_AS(biased_crb(1.0, 0, 0, 0), Error);
}

TEST_CASE("reference curves") {
    const double kc = asympt::constants().k_C;
    std::vector<double> grid;
    for (int i = -2; i <= 6; ++i)
        grid.push_back(std::pow(10.0, i));
    const auto rows = reference_curves(grid, 1.5);
    for (const auto &r : rows) {
        CHECK(r.anisimov > r.heisenberg);
        CHECK(r.error_propagation == doctest::Approx(0.5 * std::pow(r.nbar, -1.5)));
    }
    CHECK(rows.back().anisimov < rows.back().k_c_bound);
    CHECK(rows.back().anisimov * (rows.back().nbar + 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rows.back().k_c_bound / rows.back().anisimov == doctest::Approx(kc).epsilon(1e-6));
    const double g[1] = {0.0};
    CHECK_THROWS_AS(reference_curves(g), Error);
}

TEST_CASE("probe number scaling") {
    const double kc = asympt::constants().k_C;
    const auto p = make_plan(10000, 1.0, 1.0);
    CHECK(p.regime == ProbeRegime::small_mu);
    CHECK(p.n == doctest::Approx(100.0));
    CHECK(make_plan(10, 100.0, 1.0).regime == ProbeRegime::large_mu);
    CHECK(make_plan(10, 100.0, 1.0).n == 100.0);

    double last = std::numeric_limits<double>::infinity(), last_scaled = last;
    for (long long m : {100LL, 1000LL, 10000LL}) {
        const auto r = probe_scaling_uncertainty(make_plan(m, 1.0, 1.0));
        CHECK(r.upper_bound < last);
        CHECK(r.scaled < last_scaled);
        CHECK(r.scaled > kc);
        CHECK(std::fabs(r.scaled / kc - 1) < 0.1);
        CHECK(r.upper_bound >= r.single_state_delta);
        CHECK(r.heis_floor == doctest::Approx(kc / (double(m) + 1)));
        last = r.upper_bound;
        last_scaled = r.scaled;
    }
    const double k_a = asympt::constants().k_A;
    CHECK(probe_scaling_uncertainty(make_plan(1, 3.0, 1.0), k_a).heis_floor == doctest::Approx(k_a / 4));
    CHECK_THROWS_AS(make_plan(0, 1, 1), Error);
    CHECK_THROWS_AS(probe_scaling_uncertainty(make_plan(1, 1.0, 1.0)), Error);
}
