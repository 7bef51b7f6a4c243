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
#include "phaselimit/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phaselimit/errors.hpp"
#include "phaselimit/specfun.hpp"

namespace phaselimit::asympt {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double truncation = 1e-16;

struct Truncated {
    std::vector<double> values;
    double dropped_mass;
};

// J_{order + k}(z) for k = 0.. past the turning point, cut where it falls below
// 1e-16 of the peak
Truncated decaying_sequence(double order, double z) {
    const auto count = static_cast<std::size_t>(std::ceil(std::max(0.0, z - order) + 12.0 * std::cbrt(z) + 40.0));
    auto seq = specfun::bessel_j_sequence(order, count, z);
    std::size_t peak = 0;
    for (std::size_t k = 0; k < seq.size(); ++k)
        if (std::fabs(seq[k]) > std::fabs(seq[peak]))
            peak = k;
    const double floor = truncation * std::fabs(seq[peak]);
    std::size_t last = peak;
    for (std::size_t k = peak; k < seq.size(); ++k)
        if (std::fabs(seq[k]) >= floor)
            last = k;
    require(last + 1 < seq.size(), ErrorCode::internal, "bessel state: sequence too short");
    long double kept = 0, dropped = 0;
    for (std::size_t k = 0; k < seq.size(); ++k)
        (k <= last ? kept : dropped) += static_cast<long double>(seq[k]) * seq[k];
    seq.resize(last + 1);
    return {std::move(seq), static_cast<double>(dropped / (kept + dropped))};
}

void normalize(std::vector<double> &a) {
    long double s = 0;
    for (double v : a)
        s += static_cast<long double>(v) * v;
    const double inv = static_cast<double>(1.0L / std::sqrt(s));
    for (auto &v : a)
        v *= inv;
}

} // namespace

const Constants &constants() {
    static const Constants c = [] {
        const auto zeros = specfun::airy_first_zeros();
        const double za = -zeros.z_a, zp = -zeros.z_a_prime;
        return Constants{std::sqrt(2.0 * pi / std::exp(3.0)),
                         2.0 * std::pow(za / 3.0, 1.5),
                         4.0 * std::pow(zp / 3.0, 1.5),
                         za / std::cbrt(2.0),
                         zp / std::cbrt(2.0),
                         zeros.z_a,
                         zeros.z_a_prime};
    }();
    return c;
}

double SeriesExpansion::evaluate(double argument, std::size_t terms) const {
    require(terms <= coefficients.size(), ErrorCode::invalid_argument, "series: too many terms requested");
    require(argument > 0, ErrorCode::invalid_argument, "series: argument must be positive");
    // smallest terms first
    double s = 0;
    for (std::size_t k = terms; k-- > 0;)
        s += coefficients[k] / std::pow(argument, powers[k]);
    return s;
}

const SeriesExpansion &holevo_expansion() {
    static const SeriesExpansion e = [] {
        const double a3 = std::pow(-constants().z_a, 3);
        const double a6 = a3 * a3, a9 = a6 * a3;
        return SeriesExpansion{SeriesVariable::N_plus_1,
                               {2, 4, 6, 8, 10},
                               {4.0 * a3 / 27.0, 16.0 * a6 / 1215.0, 16.0 * a6 * (27.0 + 40.0 * a3) / 688905.0,
                                256.0 * a9 * (3.0 + a3) / 4428675.0,
                                64.0 * a9 * (2673.0 + 9252.0 * a3 + 1120.0 * a6) / 21483502425.0},
                               12};
    }();
    return e;
}

const SeriesExpansion &symmetric_expansion() {
    static const SeriesExpansion e = [] {
        const double p3 = std::pow(-constants().z_a_prime, 3);
        const double p6 = p3 * p3;
        return SeriesExpansion{SeriesVariable::two_J_plus_1,
                               {2, 3, 4, 5, 6},
                               {16.0 * p3 / 27.0, 32.0 * p3 / 27.0, 16.0 * p3 * (111.0 - 4.0 * p3) / 1215.0,
                                64.0 * p3 * (21.0 - 4.0 * p3) / 1215.0,
                                16.0 * p3 * (-63.0 - 40488.0 * p3 + 160.0 * p6) / 1148175.0},
                               7};
    }();
    return e;
}

SeriesValue holevo_series(double nbar, std::size_t terms) {
    require(nbar >= 0, ErrorCode::invalid_argument, "holevo_series: nbar must be >= 0");
    return {holevo_expansion().evaluate(nbar + 1.0, terms), nbar < 10.0};
}

SeriesValue symmetric_series(double jbar_abs, std::size_t terms) {
    require(jbar_abs >= 0, ErrorCode::invalid_argument, "symmetric_series: jbar must be >= 0");
    return {symmetric_expansion().evaluate(2.0 * jbar_abs + 1.0, terms), jbar_abs < 10.0};
}

BesselStateNonneg bessel_state_nonneg(double z) {
    const double x = specfun::bessel_zero_in_order(z);
    auto seq = decaying_sequence(x + 1.0, z);
    BesselStateNonneg out;
    out.x = x;
    out.z = z;
    out.dropped_mass = seq.dropped_mass;
    out.state.spectrum.kind = canonical::SpectrumKind::nonneg;
    out.state.spectrum.cutoff = seq.values.size() - 1;
    out.state.amplitudes = std::move(seq.values);
    normalize(out.state.amplitudes);

    // Hansen sums keep the J_x terms: x is only a zero to within one ulp
    const double j0 = specfun::bessel_j(x, z), j1 = specfun::bessel_j(x + 1.0, z);
    const double j2 = specfun::bessel_j(x + 2.0, z), j3 = specfun::bessel_j(x + 3.0, z);
    const double d0 = specfun::bessel_j_dorder(x, z), d1 = specfun::bessel_j_dorder(x + 1.0, z);
    const double s_sq = 0.5 * z * (j1 * d0 - j0 * d1);
    const double s11 = 0.5 * z * (j1 * j1 - j0 * j2);
    const double s12 = 0.25 * z * (j1 * j2 - j0 * j3);
    out.e_itheta = s11 / s_sq;
    // sum k J_{x+k}^2 = z s11 + z J_x J_{x+1} / 2 - x s_sq
    out.nbar = z * out.e_itheta + 0.5 * z * j0 * j1 / s_sq - x - 1.0;
    out.e_2itheta = s12 / s_sq;
    return out;
}

BesselStateSymmetric bessel_state_symmetric(double z) {
    const double x = specfun::bessel_zero_in_order_deriv(z);
    auto seq = decaying_sequence(x, z);
    BesselStateSymmetric out;
    out.x = x;
    out.z = z;
    out.dropped_mass = seq.dropped_mass;
    const std::size_t k = seq.values.size() - 1;
    out.state.spectrum.kind = canonical::SpectrumKind::symmetric;
    out.state.spectrum.cutoff = k;
    out.state.amplitudes.resize(2 * k + 1);
    for (std::size_t i = 0; i <= 2 * k; ++i)
        out.state.amplitudes[i] = seq.values[i >= k ? i - k : k - i];
    normalize(out.state.amplitudes);

    const double j0 = specfun::bessel_j(x, z), j1 = specfun::bessel_j(x + 1.0, z);
    const double j2 = specfun::bessel_j(x + 2.0, z), j3 = specfun::bessel_j(x + 3.0, z);
    const double d0 = specfun::bessel_j_dorder(x, z), d1 = specfun::bessel_j_dorder(x + 1.0, z);
    const double a_inv2 = j0 * j0 + z * (j1 * d0 - j0 * d1);
    out.e_itheta = (2.0 * j0 * j1 + z * j1 * j1 - z * j0 * j2) / a_inv2;
    // j = 0 row of the recurrence adds J_x (J_{x+1} - J_{x-1}) when J'_x(z) is not exactly 0
    const double jm = specfun::bessel_j(x - 1.0, z);
    out.jbar_abs = z * out.e_itheta - x - 0.5 * z * j0 * (j1 - jm) / a_inv2;
    out.e_2itheta = (j1 * j1 + 2.0 * j0 * j2 + 0.5 * z * (j1 * j2 - j0 * j3)) / a_inv2;
    return out;
}

DeltaBounds asymptotic_bounds_on_delta(double mean, canonical::SpectrumKind kind) {
    require(mean >= 10.0, ErrorCode::invalid_argument, "asymptotic_bounds_on_delta: mean must be >= 10");
    if (kind == canonical::SpectrumKind::nonneg) {
        const double m = mean + 1.0;
        const double a3 = std::pow(-constants().z_a, 3);
        const double lead = 4.0 * a3 / 27.0 / (m * m);
        return {lead - 16.0 * a3 * a3 / (10935.0 * std::pow(m, 4)),
                lead + (pi * pi - 4.0) * a3 / (54.0 * std::pow(m, 3))};
    }
    const double m = 2.0 * mean + 1.0;
    const auto &d = symmetric_expansion().coefficients;
    const double s = symmetric_series(mean).value;
    const double c = 1.0 - s / 2.0;
    return {std::acos(c) * std::acos(c), d[0] / (m * m) + d[1] / (m * m * m)};
}

} // namespace phaselimit::asympt
