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
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <doctest.h>

#include "phaselimit/errors.hpp"
#include "phaselimit/specfun.hpp"

using namespace phaselimit;
using namespace phaselimit::specfun;

namespace {

constexpr double pi = std::numbers::pi;

// Power series for J_nu and its order derivative; oracle only, small z.
double series_j(double nu, double z) {
    double s = 0;
    for (int k = 0; k < 80; ++k) {
        s += std::pow(-1.0, k) * std::pow(z / 2, 2 * k + nu) /
             (std::tgamma(k + 1.0) * std::tgamma(nu + k + 1.0));
    }
    return s;
}

double series_dj(double nu, double z) {
    double s = 0;
    for (int k = 0; k < 80; ++k) {
        const double t = std::pow(-1.0, k) * std::pow(z / 2, 2 * k + nu) /
                         (std::tgamma(k + 1.0) * std::tgamma(nu + k + 1.0));
        s += t * (std::log(z / 2) - boost::math::digamma(nu + k + 1.0));
    }
    return s;
}

template <class F> double bisect(F f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(a)); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

TEST_CASE("airy functions agree with an independent implementation") {
    for (int i = 0; i <= 2000; ++i) {
        const double t = -10.0 + 0.01 * i;
        const auto v = airy(t);
        CHECK(std::fabs(v.ai - boost::math::airy_ai(t)) <= 1e-12);
        CHECK(std::fabs(v.ai_prime - boost::math::airy_ai_prime(t)) <= 1e-12);
    }
    const auto far = airy(-30.0);
    CHECK(std::fabs(far.ai - boost::math::airy_ai(-30.0)) <= 1e-12);
    CHECK(airy(40.0).ai > 0);
}

TEST_CASE("airy zeros and derived constants") {
    const auto z = airy_first_zeros();
    CHECK(z.z_a < -2.3);
    CHECK(z.z_a > -2.4);
    CHECK(z.z_a_prime < -1.0);
    CHECK(z.z_a_prime > -1.1);
    CHECK(std::fabs(airy(z.z_a).ai) <= 1e-12);
    CHECK(std::fabs(airy(z.z_a_prime).ai_prime) <= 1e-12);
    const double za = bisect([](double t) { return boost::math::airy_ai(t); }, -3.0, -2.0);
    const double zap =
        bisect([](double t) { return boost::math::airy_ai_prime(t); }, -1.5, -0.5);
    CHECK(std::fabs(za - z.z_a) <= 1e-12);
    CHECK(std::fabs(zap - z.z_a_prime) <= 1e-12);
    const double kc = 2 * std::pow(-z.z_a / 3, 1.5);
    const double kcp = 4 * std::pow(-z.z_a_prime / 3, 1.5);
    CHECK(std::round(kc * 1e4) / 1e4 == doctest::Approx(1.3761).epsilon(1e-12));
    CHECK(std::round(kcp * 1e4) / 1e4 == doctest::Approx(0.7916).epsilon(1e-12));
}

TEST_CASE("half-integer order closed form") {
    for (double z : {1.0, 2.0, 5.0, 37.5, 400.0}) {
        const double ref = std::sqrt(2 / (pi * z)) * std::sin(z);
        CHECK(std::fabs(bessel_j(0.5, z) - ref) <= 1e-13 * std::sqrt(2 / (pi * z)));
        const double refm = std::sqrt(2 / (pi * z)) * std::cos(z);
        CHECK(std::fabs(bessel_j(-0.5, z) - refm) <= 1e-13 * std::sqrt(2 / (pi * z)));
    }
}

TEST_CASE("first zero of J0") {
    const double root = bisect([](double z) { return series_j(0.0, z); }, 2.0, 3.0);
    CHECK(std::fabs(root - 2.404825557695773) < 1e-12);
    CHECK(std::fabs(bessel_j(0.0, 2.404825557695773)) <= 1e-10);
}

// Values from a 30-digit reference evaluation.
struct Fixture {
    double order, z, value;
};

const Fixture bessel_fixtures[] = {
    {0.5, 1.0, 0.67139670714180309042},
    {-0.5, 3.0, -0.45604882079463317885},
    {-0.9, 0.1, 1.5191602453485751367},
    {-0.3, 7.5, 0.18277858603971753721},
    {0.0, 2.404825557695773, -6.1087652597367303971e-17},
    {2.0, 0.001, 1.2499998958333366406e-7},
    {40.0, 1.0, 1.1079158511286326622e-60},
    {0.25, 10000.0, -0.0051600615766436585095},
    {980.0, 1000.0, -0.016027448562905406047},
    {1000.0, 1000.0, 0.044730672947964040881},
    {1010.0, 1000.0, 0.012387195453704799155},
    {1050.0, 1000.0, 6.0113443126943295966e-7},
    {4960.0, 5000.0, -0.026623882235361195459},
    {5020.0, 5000.0, 0.0054771895228418853133},
    {17.3, 20.0, 0.24533797113853052035},
    {3.7, 20.0, 0.069738918576184729906},
    {150.5, 200.0, -0.051455339945409535222},
    {199.9, 200.0, 0.077694013608870365448},
    {230.0, 200.0, 7.0466438362019425579e-7},
    {7800.0, 8000.0, -0.013324581715165407201},
    {8010.0, 8000.0, 0.012816740722321682863},
    {9977.7, 10000.0, 0.029924071720835948972},
    {10021.0, 10000.0, 0.0059900620441730322797},
    {3.299246, 1.548186, 0.042167939640237780394},
    {7.771188, 7.075805, 0.15657333885431174511},
    {10.013314, 134.462605, 0.033677942223396807791},
    {4.149888, 0.11637, 2.480263573535445353e-7},
    {1.001174, 1.980478, 0.57782827665468930272},
    {5369.034764, 9510.95611, -0.0055267077385863482824},
    {871.680685, 1521.623673, 0.0198745636422651375},
    {28.285805, 156.798066, 0.032437562884379544152},
    {159.821082, 149.383727, 0.0038723328861767432044},
    {40.193169, 41.295816, 0.16634040059226621504},
    {16.914628, 227.539803, 0.051340364144924646274},
    {441.090804, 618.231645, -0.015634136049655496131},
    {-0.646069, 3.208768, -0.42411832287556410515},
    {1208.142868, 2126.357018, -0.018904628394619862019},
    {418.466677, 392.753099, 0.000067811737481751659477},
    {415.807911, 372.089503, 2.3120176124445444564e-8},
    {12.884865, 9.436632, 0.018935373547973566425},
    {23.382692, 16.714958, 0.0019722393848319970076},
    {289.574835, 2479.324099, 0.0022598138676456448402},
    {0.465655, 0.478459, 0.55770530968308542317},
};

const Fixture dorder_fixtures[] = {
    {10.0, 20.0, -0.042958680540144199045},
    {150.0, 200.0, -0.044772978939809717789},
    {900.0, 1000.0, -0.013598104120430880781},
    {0.2, 3.0, 0.65938842796336704246},
    {-0.6, 2.0, 0.87721978118134824246},
    {4950.0, 5000.0, -0.0030845553972229710935},
    {3.3, 0.5, -0.0031215103114565788796},
};

TEST_CASE("bessel_j against high-precision fixtures") {
    for (const auto &f : bessel_fixtures) {
        const double got = bessel_j(f.order, f.z);
        const double scale = std::max({std::fabs(f.value), std::fabs(bessel_j(f.order + 1, f.z)),
                                       std::fabs(f.order - 1 >= -1 ? bessel_j(f.order - 1, f.z) : 0.0)});
        CHECK_MESSAGE(std::fabs(got - f.value) <= 1e-10 * std::fabs(f.value) + 1e-14 * scale,
                      "x=", f.order, " z=", f.z);
    }
}

TEST_CASE("three-term recurrence residual") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double z = std::pow(10.0, 4.0 * u(rng));
        const double x = 1.0 + (z - 1.0) * u(rng);
        if (x > z)
            continue;
        const double jm = bessel_j(x - 1, z), j0 = bessel_j(x, z), jp = bessel_j(x + 1, z);
        const double m = std::max({std::fabs(jm), std::fabs(j0), std::fabs(jp)});
        CHECK(std::fabs(jm + jp - 2 * x / z * j0) <= 1e-10 * m);
    }
}

TEST_CASE("turning-point region is smooth") {
    // third differences in order stay at the rounding level across the turning point
    const double z = 5000.0;
    std::vector<double> v;
    for (double x = z - 40; x <= z + 40; x += 0.25)
        v.push_back(bessel_j(x, z));
    double m = 0;
    for (double t : v)
        m = std::max(m, std::fabs(t));
    for (std::size_t i = 3; i < v.size(); ++i)
        CHECK(std::fabs(v[i] - 3 * v[i - 1] + 3 * v[i - 2] - v[i - 3]) <= 1e-3 * m);
}

TEST_CASE("sequence agrees with pointwise evaluation") {
    for (double z : {3.0, 50.0, 1000.0}) {
        const double x0 = 0.3 * z - 0.7;
        const auto seq = bessel_j_sequence(x0, 40, z);
        double m = 0;
        for (double v : seq)
            m = std::max(m, std::fabs(v));
        for (std::size_t k = 0; k < seq.size(); ++k)
            CHECK(std::fabs(seq[k] - bessel_j(x0 + k, z)) <= 1e-11 * m);
    }
}

TEST_CASE("order derivative") {
    for (double z : {1.0, 2.0, 5.0}) {
        const double ref = series_dj(0.5, z);
        CHECK(std::fabs(bessel_j_dorder(0.5, z) - ref) <= 1e-7 * std::fabs(ref));
    }
    for (const auto &f : dorder_fixtures)
        CHECK_MESSAGE(std::fabs(bessel_j_dorder(f.order, f.z) - f.value) <= 1e-7 * std::fabs(f.value),
                      "x=", f.order, " z=", f.z);
    // Richardson-extrapolated central differences
    for (auto [x, z] : {std::pair{10.0, 20.0}, {150.0, 200.0}, {0.2, 3.0}}) {
        auto d = [&](double h) { return (bessel_j(x + h, z) - bessel_j(x - h, z)) / (2 * h); };
        const double h = 1e-2;
        const double rich = (16 * ((4 * d(h / 4) - d(h / 2)) / 3) - (4 * d(h / 2) - d(h)) / 3) / 15;
        CHECK(std::fabs(bessel_j_dorder(x, z) - rich) <= 1e-7 * std::fabs(rich));
    }
}

TEST_CASE("zero in order") {
    CHECK(std::fabs(bessel_zero_in_order(2.404825557695773)) <= 1e-10);
    for (double z : {3.0, 20.0, 200.0, 1000.0, 20000.0}) {
        const double x = bessel_zero_in_order(z);
        const double slope = std::fabs(bessel_j_dorder(x, z));
        CHECK(std::fabs(bessel_j(x, z)) <= 1e-10 * slope);
        // largest: no sign change above
        for (double y = x + 0.05; y < z + 5; y += 0.05 * std::max(1.0, std::cbrt(z)))
            CHECK(bessel_j(y, z) > 0);
        CHECK(x > -1.0);
    }
    const double z = 1000.0;
    CHECK(std::fabs(bessel_zero_in_order(z) - zero_in_order_seed(z)) < 1e-7);
    CHECK_THROWS_AS(bessel_zero_in_order(2.0), Error);
}

TEST_CASE("zero in order of the derivative") {
    const double x = bessel_zero_in_order_deriv(1.8411837813406593);
    CHECK(std::fabs(x - 1.0) <= 1e-10);
    for (double z : {2.0, 20.0, 200.0, 1000.0}) {
        const double r = bessel_zero_in_order_deriv(z);
        CHECK(std::fabs(bessel_j(r - 1, z) - bessel_j(r + 1, z)) <= 1e-9);
        for (double y = r + 0.05; y < z + 5; y += 0.05 * std::max(1.0, std::cbrt(z)))
            CHECK(bessel_j(y - 1, z) - bessel_j(y + 1, z) > 0);
    }
}

TEST_CASE("product sums against brute-force partial sums") {
    for (double z : {20.0, 200.0}) {
        const double x = bessel_zero_in_order(z);
        const auto ps = bessel_product_sums(x, z);
        const std::size_t n = static_cast<std::size_t>(10 * z);
        const auto j = bessel_j_sequence(x, n + 3, z);
        double s11 = 0, ssq = 0, s12 = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            s11 += j[k] * j[k + 1];
            ssq += j[k] * j[k];
            s12 += j[k] * j[k + 2];
        }
        CHECK(std::fabs(ps.s11 - s11) <= 1e-9 * std::fabs(s11));
        CHECK(std::fabs(ps.s_sq - ssq) <= 1e-9 * std::fabs(ssq));
        CHECK(std::fabs(ps.s12 - s12) <= 1e-9 * std::fabs(s12));
    }
    CHECK_THROWS_AS(bessel_product_sums(3.0, 20.0), Error);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_j(1.0, 0.0), Error);
    CHECK_THROWS_AS(bessel_j(-1.5, 2.0), Error);
    CHECK_THROWS_AS(bessel_j(1.0, -3.0), Error);
    CHECK_THROWS_AS(bessel_j(1.0, 1e6), Error);
}
