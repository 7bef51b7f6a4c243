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
#include "phaselimit/variational.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/math/tools/toms748_solve.hpp>

#include "phaselimit/errors.hpp"
#include "phaselimit/specfun.hpp"

namespace phaselimit::variational {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double tail_limit = 1e-12;

using eigensolve::BandedSymmetric;
using eigensolve::ToeplitzPlusDiagonal;
using eigensolve::Which;

double cost_value(const OptimalPoint &p) {
    switch (p.cost) {
    case CostName::f1:
        return p.delta_1 * p.delta_1;
    case CostName::f2:
        return p.delta_2 * p.delta_2;
    case CostName::f3:
        return p.delta_3 * p.delta_3;
    case CostName::theta_sq:
        return p.delta * p.delta;
    }
    return 0;
}

BandedSymmetric theta_sq_preconditioner(const Spectrum &s, double beta) {
    const std::size_t n = s.size();
    BandedSymmetric p(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        p.diagonals[0][i] = 2.0 + beta * s.weight(i);
    for (std::size_t i = 0; i + 1 < n; ++i)
        p.diagonals[1][i] = -1.0;
    return p;
}

// small means: <N> ~ 1/(4 beta^2); large: <N+1> ~ gamma beta^{-1/3}
double beta_seed(CostName cost, SpectrumKind kind, double target) {
    const double za = -specfun::airy_first_zeros().z_a;
    const double gamma = za / std::cbrt(2.0);
    const double small = kind == SpectrumKind::nonneg ? 1.0 / (2.0 * std::sqrt(target))
                                                      : 1.0 / std::sqrt(2.0 * target);
    const double large = std::pow(gamma / (target + 1.0), 3);
    const double b = std::min(small, large);
    return cost == CostName::theta_sq ? 2.0 * b : b;
}

} // namespace

CostFunction make_cost(CostName name, std::size_t dimension) {
    CostFunction c;
    c.name = name;
    const double q = pi * pi / 4 - 1.0;
    switch (name) {
    case CostName::f1:
        c.cosine_coeffs = {2.0, -2.0};
        break;
    case CostName::f2:
        c.cosine_coeffs = {2.5, -8.0 / 3.0, 1.0 / 6.0};
        break;
    case CostName::f3:
        // q [2(1 - cos) - (1 - cos 2)/2] + 2(1 - cos)
        c.cosine_coeffs = {1.5 * q + 2.0, -2.0 * q - 2.0, 0.5 * q};
        break;
    case CostName::theta_sq:
        require(dimension >= 1, ErrorCode::invalid_argument, "make_cost: theta_sq needs a dimension");
        c.cosine_coeffs.assign(dimension, 0.0);
        c.cosine_coeffs[0] = pi * pi / 3;
        for (std::size_t m = 1; m < dimension; ++m)
            c.cosine_coeffs[m] = 4.0 * (m % 2 ? -1.0 : 1.0) / (double(m) * double(m));
        break;
    }
    return c;
}

double evaluate(const CostFunction &cost, double theta) {
    double s = 0;
    for (std::size_t m = 0; m < cost.cosine_coeffs.size(); ++m)
        s += cost.cosine_coeffs[m] * std::cos(double(m) * theta);
    return s;
}

std::string cost_label(CostName name) {
    switch (name) {
    case CostName::f1:
        return "f1";
    case CostName::f2:
        return "f2";
    case CostName::f3:
        return "f3";
    case CostName::theta_sq:
        return "theta_sq";
    }
    return "unknown";
}

Matrix build_matrix(const CostFunction &cost, const Spectrum &spectrum, double beta) {
    require(spectrum.cutoff >= 1, ErrorCode::invalid_argument, "build_matrix: cutoff must be >= 1");
    require(std::isfinite(beta) && beta >= 0, ErrorCode::invalid_argument,
            "build_matrix: beta must be finite and >= 0");
    require(!cost.cosine_coeffs.empty(), ErrorCode::invalid_argument, "build_matrix: empty cost");
    const std::size_t n = spectrum.size();
    const auto &a = cost.cosine_coeffs;
    if (cost.name == CostName::theta_sq) {
        std::vector<double> col(n, 0.0), diag(n);
        col[0] = a[0];
        for (std::size_t m = 1; m < std::min(n, a.size()); ++m)
            col[m] = a[m] / 2;
        for (std::size_t i = 0; i < n; ++i)
            diag[i] = beta * spectrum.weight(i);
        return ToeplitzPlusDiagonal(std::move(col), std::move(diag));
    }
    // -(T(f) - a_0)/2 - beta W, T(f) having a_m/2 on the m-th off-diagonals
    const std::size_t bw = std::min(a.size() - 1, n - 1);
    BandedSymmetric m(n, bw);
    for (std::size_t i = 0; i < n; ++i)
        m.diagonals[0][i] = -beta * spectrum.weight(i);
    for (std::size_t k = 1; k <= bw; ++k)
        std::fill(m.diagonals[k].begin(), m.diagonals[k].end(), -a[k] / 4);
    return m;
}

double tail_mass(const ProbeState &state) {
    const auto &s = state.spectrum;
    const auto &a = state.amplitudes;
    const long k = std::max<long>(1, static_cast<long>(std::ceil(0.01 * double(s.cutoff))));
    const long edge = static_cast<long>(s.cutoff) - k;
    long double tail = 0, total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double p = static_cast<long double>(a[i]) * a[i];
        total += p;
        if (s.weight(i) > double(edge))
            tail += p;
    }
    return static_cast<double>(tail / total);
}

namespace {

OptimalPoint solve_fixed(const CostFunction &cost, const Spectrum &spectrum, double beta,
                         const std::vector<double> *start) {
    const auto matrix = build_matrix(cost, spectrum, beta);
    eigensolve::EigenPair e;
    if (const auto *b = std::get_if<BandedSymmetric>(&matrix)) {
        e = eigensolve::extremal_eigenpair(*b, Which::largest);
    } else {
        const auto &t = std::get<ToeplitzPlusDiagonal>(matrix);
        const auto pre = theta_sq_preconditioner(spectrum, beta);
        eigensolve::SolveOptions so;
        so.preconditioner = &pre;
        if (start && start->size() == spectrum.size())
            so.start = start;
        e = eigensolve::extremal_eigenpair(t, Which::smallest, so);
    }
    OptimalPoint p;
    p.cost = cost.name;
    p.beta = beta;
    p.alpha = e.value;
    p.cutoff = spectrum.cutoff;
    p.residual = e.residual;
    p.state.spectrum = spectrum;
    p.state.amplitudes = std::move(e.vector);
    p.mean_constraint = canonical::mean_weight(p.state);
    const auto m = canonical::state_metrics(p.state);
    p.delta = std::sqrt(m.amse);
    p.delta_H = std::sqrt(m.holevo);
    p.delta_1 = std::sqrt(m.delta1_sq);
    p.delta_2 = std::sqrt(std::max(0.0, m.delta2_sq));
    p.delta_3 = std::sqrt(m.delta3_sq);
    return p;
}

CostFunction cost_for(CostName name, const Spectrum &s) {
    return make_cost(name, name == CostName::theta_sq ? s.size() : 0);
}

} // namespace

OptimalPoint solve_point(const CostFunction &cost, const Spectrum &spectrum, double beta,
                         const PointOptions &opt) {
    Spectrum s = spectrum;
    CostFunction c = cost;
    for (;;) {
        auto p = solve_fixed(c, s, beta, opt.start);
        if (!opt.grow_cutoff || tail_mass(p.state) <= tail_limit)
            return p;
        require(2 * s.cutoff <= opt.max_cutoff, ErrorCode::cutoff,
                "solve_point: cutoff insufficient and growth limit reached");
        s.cutoff *= 2;
        if (c.name == CostName::theta_sq)
            c = make_cost(CostName::theta_sq, s.size());
    }
}

OptimalPoint solve_for_mean(CostName cost, SpectrumKind kind, double target, double mean_tolerance,
                            double cutoff_factor, std::size_t cutoff_floor) {
    require(std::isfinite(target) && target > 0, ErrorCode::invalid_argument,
            "solve_for_mean: target must be positive");
    require(cutoff_factor > 0 && cutoff_floor >= 1, ErrorCode::invalid_argument,
            "solve_for_mean: cutoff factor and floor must be positive");
    Spectrum s;
    s.kind = kind;
    require(cutoff_factor * target < double(std::size_t(1) << 22), ErrorCode::cutoff,
            "solve_for_mean: initial cutoff exceeds 2^22");
    s.cutoff = std::max(cutoff_floor, static_cast<std::size_t>(std::ceil(cutoff_factor * target)));
    for (;;) {
        const CostFunction c = cost_for(cost, s);
        OptimalPoint best;
        double best_err = std::numeric_limits<double>::infinity();
        std::vector<double> warm;
        auto f = [&](double u) {
            auto p = solve_fixed(c, s, std::exp(u), warm.empty() ? nullptr : &warm);
            const double g = p.mean_constraint - target;
            if (cost == CostName::theta_sq)
                warm = p.state.amplitudes;
            if (std::fabs(g) < best_err) {
                best_err = std::fabs(g);
                best = std::move(p);
            }
            return g;
        };
        double u = std::log(beta_seed(cost, kind, target));
        double fu = f(u);
        double lo = u, hi = u, flo = fu, fhi = fu;
        const double step = std::log(4.0);
        for (int k = 0; k < 200 && flo < 0; ++k) {
            hi = lo;
            fhi = flo;
            lo -= step;
            flo = f(lo);
        }
        for (int k = 0; k < 200 && fhi > 0; ++k) {
            lo = hi;
            flo = fhi;
            hi += step;
            fhi = f(hi);
        }
        require(flo >= 0 && fhi <= 0, ErrorCode::bracket, "solve_for_mean: beta range exhausted");
        const double goal = 0.1 * mean_tolerance * target;
        if (best_err > goal && flo != 0 && fhi != 0) {
            boost::math::tools::eps_tolerance<double> eps(50);
            auto tol = [&](double a, double b) { return best_err <= goal || eps(a, b); };
            std::uintmax_t iters = 200;
            boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
        }
        require(best_err <= mean_tolerance * target, ErrorCode::convergence,
                "solve_for_mean: mean tolerance not reached");
        if (tail_mass(best.state) <= tail_limit)
            return best;
        require(s.cutoff < (std::size_t(1) << 22), ErrorCode::cutoff,
                "solve_for_mean: cutoff insufficient and growth limit reached");
        s.cutoff *= 2;
    }
}

SweepResult sweep_curve(CostName cost, SpectrumKind kind, std::span<const double> targets,
                        const SweepOptions &opt) {
    require(!targets.empty(), ErrorCode::invalid_argument, "sweep_curve: no targets");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        require(std::isfinite(targets[i]) && targets[i] > 0, ErrorCode::invalid_argument,
                "sweep_curve: targets must be positive");
        require(i == 0 || targets[i] > targets[i - 1], ErrorCode::invalid_argument,
                "sweep_curve: targets must be strictly increasing");
    }
    SweepResult out;
    out.points.resize(targets.size());
    std::vector<std::exception_ptr> errors(targets.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < targets.size();) {
            try {
                out.points[i] = solve_for_mean(cost, kind, targets[i], opt.mean_tolerance, opt.cutoff_factor,
                                               opt.cutoff_floor);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t nthreads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, targets.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < nthreads; ++t)
            pool.emplace_back(worker);
        worker();
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    const auto &p = out.points;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (!(p[i].beta < p[i - 1].beta))
            out.monotone = false;
    for (std::size_t i = 2; i < p.size(); ++i) {
        const double x0 = p[i - 2].mean_constraint, x1 = p[i - 1].mean_constraint, x2 = p[i].mean_constraint;
        const double f0 = cost_value(p[i - 2]), f1 = cost_value(p[i - 1]), f2 = cost_value(p[i]);
        const double s0 = (f1 - f0) / (x1 - x0), s1 = (f2 - f1) / (x2 - x1);
        const double slack = 1e-9 * (std::fabs(f0) + std::fabs(f1) + std::fabs(f2)) / std::min(x1 - x0, x2 - x1);
        if (s1 < s0 - slack)
            out.convex = false;
    }
    return out;
}

double delta3_on_f1_state(const OptimalPoint &point) {
    require(point.cost == CostName::f1, ErrorCode::invalid_argument,
            "delta3_on_f1_state: point was not optimized for f1");
    return std::sqrt(canonical::state_metrics(point.state).delta3_sq);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    require(lo > 0 && hi >= lo && count >= 1, ErrorCode::invalid_argument, "log_spaced: bad range");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = std::exp(a + (b - a) * double(i) / double(count - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

} // namespace phaselimit::variational
