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
#include "phaselimit/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "phaselimit/errors.hpp"

namespace phaselimit::canonical {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr std::size_t direct_deficits = 64;

double sum_squares(const std::vector<double> &a) {
    long double s = 0;
    for (double v : a)
        s += static_cast<long double>(v) * v;
    return static_cast<double>(s);
}

// c_m = sum_n a_n a_{n+m}, m = 0 .. n-1
std::vector<double> correlations(const std::vector<double> &a) {
    const std::size_t n = a.size();
    if (n <= 256) {
        std::vector<double> c(n, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            long double s = 0;
            for (std::size_t i = 0; i + m < n; ++i)
                s += static_cast<long double>(a[i]) * a[i + m];
            c[m] = static_cast<double>(s);
        }
        return c;
    }
    return detail::autocorrelation(a);
}

Metrics metrics_from_deficits(double d1, double d2, double amse) {
    Metrics m;
    const double c1 = 1.0 - d1;
    m.amse = amse;
    m.holevo = c1 > 0 ? d1 * (2.0 - d1) / (c1 * c1) : inf;
    m.delta1_sq = 2.0 * d1;
    m.delta2_sq = 8.0 / 3.0 * d1 - d2 / 6.0;
    m.delta3_sq = (pi * pi / 4 - 1.0) * (2.0 * d1 - 0.5 * d2) + 2.0 * d1;
    return m;
}

} // namespace

double k_a() { return std::sqrt(2.0 * pi / std::exp(3.0)); }

std::vector<std::complex<double>> moments(const ProbeState &state, std::size_t m_max) {
    const auto &a = state.amplitudes;
    require(!a.empty(), ErrorCode::invalid_argument, "moments: empty state");
    require(m_max < a.size(), ErrorCode::invalid_argument, "moments: m_max exceeds support");
    const double nrm = sum_squares(a);
    const auto c = correlations(a);
    std::vector<std::complex<double>> out(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m)
        out[m] = c[m] / nrm;
    return out;
}

Metrics metrics_from_moments(std::span<const std::complex<double>> moms) {
    require(!moms.empty(), ErrorCode::invalid_argument, "metrics_from_moments: no moments");
    const double c0 = moms[0].real();
    auto c = [&](std::size_t m) { return m < moms.size() ? moms[m].real() / c0 : 0.0; };
    long double amse = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 3;
    for (std::size_t m = 1; m < moms.size(); ++m)
        amse += 4.0L * (m % 2 ? -1.0L : 1.0L) * c(m) / (static_cast<long double>(m) * m);
    Metrics out;
    const double c1 = c(1), c2 = c(2);
    out.amse = static_cast<double>(amse);
    out.holevo = c1 > 0 ? 1.0 / (c1 * c1) - 1.0 : inf;
    out.delta1_sq = 2.0 - 2.0 * c1;
    out.delta2_sq = 2.5 - 8.0 / 3.0 * c1 + c2 / 6.0;
    out.delta3_sq = (pi * pi / 4 - 1.0) * (2.0 * (1.0 - c1) - (1.0 - c2) / 2.0) + 2.0 * (1.0 - c1);
    return out;
}

Metrics state_metrics(const ProbeState &state) {
    const auto &a = state.amplitudes;
    const std::size_t n = a.size();
    require(n >= 1, ErrorCode::invalid_argument, "state_metrics: empty state");
    const double nrm = sum_squares(a);
    require(nrm > 0, ErrorCode::invalid_argument, "state_metrics: zero state");
    const std::size_t m0 = std::min(direct_deficits, n - 1);
    // d_m = 1 - c_m = sum (a_{i+m} - a_i)^2 / 2 with a zero outside the support
    std::vector<double> d(m0 + 1, 0.0);
    for (std::size_t m = 1; m <= m0; ++m) {
        long double s = 0;
        for (std::size_t i = 0; i + m < n; ++i) {
            const long double t = static_cast<long double>(a[i + m]) - a[i];
            s += t * t;
        }
        for (std::size_t i = 0; i < m; ++i)
            s += static_cast<long double>(a[i]) * a[i] + static_cast<long double>(a[n - 1 - i]) * a[n - 1 - i];
        d[m] = static_cast<double>(s / (2.0L * nrm));
    }
    // <Theta^2> = [pi^2/3 + 4 sum_{m<=m0} (-1)^m/m^2] - 4 sum_{m<=m0} (-1)^m d_m/m^2
    //             + 4 sum_{m>m0} (-1)^m c_m/m^2
    long double head = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 3;
    long double dsum = 0;
    for (std::size_t m = 1; m <= m0; ++m) {
        const long double w = 4.0L * (m % 2 ? -1.0L : 1.0L) / (static_cast<long double>(m) * m);
        head += w;
        dsum += w * d[m];
    }
    long double tail = 0;
    if (n - 1 > m0) {
        const auto c = correlations(a);
        for (std::size_t m = m0 + 1; m < n; ++m)
            tail += 4.0L * (m % 2 ? -1.0L : 1.0L) * (c[m] / nrm) / (static_cast<long double>(m) * m);
    }
    const long double amse = head - dsum + tail;
    const double d1 = n > 1 ? d[1] : 1.0;
    const double d2 = n > 2 ? d[2] : 1.0;
    return metrics_from_deficits(d1, d2, static_cast<double>(amse));
}

double mean_weight(const ProbeState &state) {
    const auto &a = state.amplitudes;
    long double s = 0, w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double p = static_cast<long double>(a[i]) * a[i];
        s += p;
        w += p * state.spectrum.weight(i);
    }
    return static_cast<double>(w / s);
}

std::vector<std::complex<double>> unbias_rotation(std::span<const std::complex<double>> moms) {
    require(moms.size() >= 2 && std::abs(moms[1]) > 0, ErrorCode::domain,
            "unbias_rotation: first moment is zero");
    const double th = std::arg(moms[1]);
    std::vector<std::complex<double>> out(moms.begin(), moms.end());
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] *= std::polar(1.0, -static_cast<double>(m) * th);
    out[1] = {std::abs(moms[1]), 0.0};
    return out;
}

std::size_t default_grid_size(const ProbeState &state) {
    return detail::next_pow2(std::max<std::size_t>(8 * state.amplitudes.size(), 4096));
}

ErrorDistribution canonical_distribution(const ProbeState &state, std::size_t grid_size) {
    const std::size_t levels = state.amplitudes.size();
    require(grid_size >= 8 * (state.spectrum.cutoff + 1) && grid_size >= 2 * levels &&
                (grid_size & (grid_size - 1)) == 0,
            ErrorCode::invalid_argument,
            "canonical_distribution: grid must be a power of two >= 8*(cutoff+1)");
    std::vector<std::complex<double>> in(grid_size, 0.0);
    const double nrm = sum_squares(state.amplitudes);
    for (std::size_t i = 0; i < levels; ++i)
        in[i] = (i % 2 ? -1.0 : 1.0) * state.amplitudes[i] / std::sqrt(nrm);
    const auto out = detail::cfft_backward(in);
    ErrorDistribution d;
    d.grid.resize(grid_size);
    d.density.resize(grid_size);
    long double s = 0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        d.grid[j] = -pi + 2 * pi * static_cast<double>(j) / static_cast<double>(grid_size);
        d.density[j] = std::norm(out[j]) / (2 * pi);
        s += d.density[j];
    }
    d.normalization_check = static_cast<double>(s * 2 * pi / grid_size);
    return d;
}

EntropyLength entropy_and_length(const ErrorDistribution &dist) {
    require(!dist.density.empty(), ErrorCode::invalid_argument, "entropy: empty distribution");
    long double h = 0;
    for (double p : dist.density)
        if (p > 0)
            h -= p * std::log(std::max(p, 1e-300));
    h *= 2 * pi / static_cast<double>(dist.density.size());
    return {static_cast<double>(h), std::exp(static_cast<double>(h))};
}

double entropy_generator(const GeneratorDistribution &dist) {
    long double h = 0;
    for (double p : dist.probabilities)
        if (p > 0)
            h -= p * std::log(std::max(p, 1e-300));
    return static_cast<double>(h);
}

GeneratorDistribution generator_distribution(const ProbeState &state) {
    GeneratorDistribution g;
    const double nrm = sum_squares(state.amplitudes);
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        g.eigenvalues.push_back(state.spectrum.eigenvalue(i));
        g.probabilities.push_back(state.amplitudes[i] * state.amplitudes[i] / nrm);
    }
    return g;
}

std::size_t BoundReport::violations() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const BoundCheck &c) { return !c.holds; }));
}

void BoundReport::add(std::string name, double lhs, double rhs, double tolerance) {
    BoundCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = lhs - rhs;
    if (std::isinf(lhs) && std::isinf(rhs) && lhs == rhs)
        c.margin = 0;
    c.holds = c.margin >= -tolerance * std::max(1.0, std::fabs(rhs));
    checks.push_back(std::move(c));
}

BoundReport verify_bounds(const ProbeState &state) {
    BoundReport rep;
    const auto m = state_metrics(state);
    const double delta = std::sqrt(m.amse);
    const auto dist = canonical_distribution(state, default_grid_size(state));
    const auto el = entropy_and_length(dist);
    const auto gd = generator_distribution(state);
    const double hg = entropy_generator(gd);

    rep.add("entropic_uncertainty", el.entropy + hg, std::log(2 * pi), 1e-9);
    rep.add("entropic_length", delta, el.length / std::sqrt(2 * pi * std::exp(1.0)), 1e-9);
    rep.add("entropic_generator", el.length / std::sqrt(2 * pi * std::exp(1.0)),
            std::sqrt(2 * pi / std::exp(1.0)) * std::exp(-hg), 1e-9);

    // support and median of the generator distribution
    std::size_t first = gd.probabilities.size(), last = 0;
    for (std::size_t i = 0; i < gd.probabilities.size(); ++i)
        if (gd.probabilities[i] > 0) {
            first = std::min(first, i);
            last = i;
        }
    long double cum = 0;
    double g_med = static_cast<double>(gd.eigenvalues[first]);
    for (std::size_t i = 0; i < gd.probabilities.size(); ++i) {
        cum += gd.probabilities[i];
        if (cum >= 0.5L) {
            g_med = static_cast<double>(gd.eigenvalues[i]);
            break;
        }
    }
    auto abs_mean = [&](double g) {
        long double s = 0;
        for (std::size_t i = 0; i < gd.probabilities.size(); ++i)
            s += gd.probabilities[i] * std::fabs(static_cast<double>(gd.eigenvalues[i]) - g);
        return static_cast<double>(s);
    };
    const double ka = k_a();
    if (state.spectrum.kind == SpectrumKind::nonneg) {
        double nbar = 0;
        for (std::size_t i = 0; i < gd.probabilities.size(); ++i)
            nbar += gd.probabilities[i] * static_cast<double>(gd.eigenvalues[i]);
        rep.add("heisenberg_kA", delta, ka / (nbar + 1.0));
    }
    rep.add("heisenberg_kA_median", delta, ka / (2 * abs_mean(g_med) + 1.0));
    double best = ka / (2 * abs_mean(g_med) + 1.0);
    for (int k = -10; k <= 10; ++k)
        best = std::max(best, ka / (2 * abs_mean(g_med + 0.1 * k) + 1.0));
    rep.add("heisenberg_kA_scan", delta, best);

    const auto moms = moments(state, std::min<std::size_t>(2, state.amplitudes.size() - 1));
    const double c1 = moms.size() > 1 ? moms[1].real() : 0.0;
    const std::size_t nmax = last - first;
    if (nmax >= 1) {
        const double r = std::abs(moms[1]);
        const double holevo_abs = r > 0 ? std::sqrt(1.0 / (r * r) - 1.0) : inf;
        rep.add("tan_bound", holevo_abs, std::tan(pi / (static_cast<double>(nmax) + 2.0)));
    }
    rep.add("arccos_lower", delta, std::acos(std::clamp(c1, -1.0, 1.0)));
    rep.add("cosine_upper", pi * pi / 2 * (1.0 - c1), m.amse);
    rep.add("f1_below_theta_sq", m.amse, m.delta1_sq);
    rep.add("f2_below_theta_sq", m.amse, m.delta2_sq);
    rep.add("f3_above_theta_sq", m.delta3_sq, m.amse);
    return rep;
}

double thermal_entropy(double nbar) {
    require(nbar > 0, ErrorCode::domain, "thermal_entropy: nbar must be positive");
    return std::log1p(nbar) + nbar * std::log1p(1.0 / nbar);
}

LaplaceFamily laplace_closed_form(double beta, double r) {
    require(beta > 0 && r >= 0 && r < 1, ErrorCode::domain, "laplace: need beta > 0, 0 <= r < 1");
    const double om = -std::expm1(-beta); // 1 - e^{-beta}
    LaplaceFamily f;
    f.normalization = (std::exp(-beta * r) + std::exp(-beta * (1 - r))) / om;
    const double num = 2 * std::cosh(beta * r) * (1 - r) + 2 * std::cosh(beta * (1 - r)) * r;
    f.mean_abs = num / (om * (std::exp(beta * r) + std::exp(beta * (1 - r))));
    f.entropy = std::log(f.normalization) + beta * f.mean_abs;
    return f;
}

LaplaceFamily laplace_direct(double beta, double r) {
    require(beta > 0 && r >= 0 && r < 1, ErrorCode::domain, "laplace: need beta > 0, 0 <= r < 1");
    // g = -r, so ceil(g) - g = r
    const long kmax = static_cast<long>(60.0 / beta) + 2;
    long double z = 0, m = 0;
    for (long n = -kmax; n <= kmax; ++n) {
        const long double x = std::fabs(static_cast<long double>(n) + r);
        const long double w = std::exp(-beta * x);
        z += w;
        m += w * x;
    }
    long double h = 0;
    for (long n = -kmax; n <= kmax; ++n) {
        const long double x = std::fabs(static_cast<long double>(n) + r);
        const long double p = std::exp(-beta * x) / z;
        if (p > 0)
            h -= p * std::log(p);
    }
    return {static_cast<double>(z), static_cast<double>(m / z), static_cast<double>(h)};
}

BoundReport max_entropy_bound_checks() {
    BoundReport rep;
    auto strict = [&rep](std::string name, double lhs, double rhs) {
        BoundCheck c{std::move(name), lhs, rhs, lhs - rhs, lhs > rhs};
        rep.checks.push_back(std::move(c));
    };
    for (int i = 0; i <= 70; ++i) {
        const double nbar = std::pow(10.0, -3.0 + 7.0 * i / 70.0);
        const double closed = thermal_entropy(nbar);
        // direct summation over p_n = q^n / (nbar + 1)
        const double q = nbar / (nbar + 1.0);
        long double h = 0, p = 1.0L / (nbar + 1.0);
        const long double lq = std::log(static_cast<long double>(q));
        const long double l0 = std::log(static_cast<long double>(nbar + 1.0));
        for (long n = 0; p > 1e-30L * (1.0L / (nbar + 1.0)) || n < 10; ++n) {
            h += p * (l0 - n * lq);
            p *= q;
        }
        const std::string tag = "nbar=" + std::to_string(nbar);
        rep.add("thermal_closed_form " + tag, 1e-10 * std::max(1.0, closed),
                std::fabs(static_cast<double>(h) - closed), 0.0);
        strict("thermal_below_ln_plus_one " + tag, std::log1p(nbar) + 1.0, closed);
        strict("x_log_one_plus_inverse " + tag, 1.0, nbar * std::log1p(1.0 / nbar));
    }
    for (int ri = 0; ri <= 5; ++ri) {
        const double r = 0.1 * ri;
        for (int bi = 0; bi <= 25; ++bi) {
            const double beta = std::pow(10.0, -3.0 + 5.0 * bi / 25.0);
            const auto cf = laplace_closed_form(beta, r);
            const auto dr = laplace_direct(beta, r);
            const std::string tag = "r=" + std::to_string(r) + " beta=" + std::to_string(beta);
            const double dev = std::max({std::fabs(cf.normalization - dr.normalization) / dr.normalization,
                                         std::fabs(cf.mean_abs - dr.mean_abs) / std::max(dr.mean_abs, 1e-300),
                                         std::fabs(cf.entropy - dr.entropy) / std::max(1.0, std::fabs(dr.entropy))});
            rep.add("laplace_closed_form " + tag, 1e-10, dev, 0.0);
            strict("laplace_entropy_bound " + tag, std::log(2 * cf.mean_abs + 1) + 1, cf.entropy);
            const double first = beta * r + std::log(cf.normalization);
            rep.add("laplace_first_part " + tag, std::log(2 * cf.mean_abs + 1), first, 1e-12);
            strict("laplace_second_part " + tag, 1.0, beta * cf.mean_abs - beta * r);
        }
    }
    return rep;
}

} // namespace phaselimit::canonical
