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
#include "phaselimit/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/roots.hpp>

#include "phaselimit/errors.hpp"

namespace phaselimit::specfun {

namespace {

using ld = long double;
constexpr double pi = std::numbers::pi;

// Ai(0) and -Ai'(0).
constexpr ld airy_c1 = 0.355028053887817239260063186004183176L;
constexpr ld airy_c2 = 0.258819403792806798405183560189203963L;

// Extended precision keeps the Maclaurin cancellation below 1e-13 up to |t| = 8.
constexpr double maclaurin_limit = 8.0;

AiryValues airy_maclaurin(double tt) {
    const ld t = tt;
    const ld t3 = t * t * t;
    ld f = 1, g = t, fp = 0, gp = 1;
    ld tf = 1, tg = t; // current terms of f and g
    for (int k = 0; k < 200; ++k) {
        const ld a = 3.0L * k;
        tf *= t3 / ((a + 2) * (a + 3));
        tg *= t3 / ((a + 3) * (a + 4));
        f += tf;
        g += tg;
        if (t != 0) {
            fp += (a + 3) * tf / t;
            gp += (a + 4) * tg / t;
        }
        if (std::fabs(tf) + std::fabs(tg) < 1e-22L * (std::fabs(f) + std::fabs(g)))
            break;
    }
    if (t == 0) {
        fp = 0;
        gp = 1;
    }
    return {static_cast<double>(airy_c1 * f - airy_c2 * g),
            static_cast<double>(airy_c1 * fp - airy_c2 * gp)};
}

// u_k and v_k of the Airy asymptotic expansions.
struct AiryUV {
    std::array<ld, 40> u{}, v{};
    AiryUV() {
        u[0] = v[0] = 1;
        for (int k = 1; k < 40; ++k) {
            const ld kk = k;
            u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) /
                   ((2 * kk - 1) * 216 * kk);
            v[k] = -u[k] * (6 * kk + 1) / (6 * kk - 1);
        }
    }
};

const AiryUV &airy_uv() {
    static const AiryUV uv;
    return uv;
}

AiryValues airy_asymptotic(double t) {
    const auto &c = airy_uv();
    const ld x = std::fabs(static_cast<ld>(t));
    const ld zeta = 2.0L / 3.0L * x * std::sqrt(x);
    const ld sqpi = std::sqrt(std::numbers::pi_v<ld>);
    if (t > 0) {
        ld su = 0, sv = 0, p = 1, last = std::numeric_limits<ld>::max();
        for (int k = 0; k < 40; ++k) {
            const ld term = c.u[k] * p;
            if (std::fabs(term) > last)
                break;
            last = std::fabs(term);
            su += term;
            sv += c.v[k] * p;
            p *= -1 / zeta;
        }
        const ld e = std::exp(-zeta) / (2 * sqpi);
        const ld q = std::sqrt(std::sqrt(x));
        return {static_cast<double>(e / q * su), static_cast<double>(-e * q * sv)};
    }
    // oscillatory side
    ld ue = 0, uo = 0, ve = 0, vo = 0, p = 1, last = std::numeric_limits<ld>::max();
    for (int k = 0; k < 40; ++k) {
        const ld term = c.u[k] * p;
        if (std::fabs(term) > last)
            break;
        last = std::fabs(term);
        const ld s = ((k / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 0) {
            ue += s * term;
            ve += s * c.v[k] * p;
        } else {
            uo += s * term;
            vo += s * c.v[k] * p;
        }
        p /= zeta;
    }
    const ld ph = zeta - std::numbers::pi_v<ld> / 4;
    const ld cs = std::cos(ph), sn = std::sin(ph);
    const ld q = std::sqrt(std::sqrt(x));
    return {static_cast<double>((cs * ue + sn * uo) / (sqpi * q)),
            static_cast<double>(q * (sn * ve - cs * vo) / sqpi)};
}

constexpr double cf_eps = 1e-16;
constexpr double fpmin = 1e-300;

// Lentz evaluation of J'_nu/J_nu; sign tracks the sign of J_nu relative to the start.
double cf1_ratio(double nu, double x, int &isign) {
    const double xi = 1.0 / x, xi2 = 2.0 * xi;
    isign = 1;
    double h = nu * xi;
    if (h < fpmin)
        h = fpmin;
    double b = xi2 * nu, d = 0.0, c = h;
    const long maxit = 10000 + static_cast<long>(20.0 * x);
    for (long i = 0; i < maxit; ++i) {
        b += xi2;
        d = b - d;
        if (std::fabs(d) < fpmin)
            d = fpmin;
        c = b - 1.0 / c;
        if (std::fabs(c) < fpmin)
            c = fpmin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0)
            isign = -isign;
        if (std::fabs(del - 1.0) <= cf_eps)
            return h;
    }
    throw Error(ErrorCode::convergence, "bessel: continued fraction did not converge");
}

// J for any real order; reflection below zero.
double j_any(double order, double z) {
    if (order >= 0)
        return boost::math::cyl_bessel_j(order, z);
    const double a = -order;
    return std::cos(a * pi) * boost::math::cyl_bessel_j(a, z) -
           std::sin(a * pi) * boost::math::cyl_neumann(a, z);
}

void check_argument(double z) {
    require(std::isfinite(z) && z > 0.0, ErrorCode::domain, "bessel: argument must be positive");
    require(z <= 3e5, ErrorCode::domain, "bessel: argument must be at most 3e5");
}

// Ridders extrapolation of central differences.
template <class F> double ridders(F &&f, double x, double h) {
    constexpr int ntab = 10;
    constexpr double con = 1.4, con2 = con * con, safe = 2.0;
    double a[ntab][ntab];
    double hh = h;
    a[0][0] = (f(x + hh) - f(x - hh)) / (2.0 * hh);
    double err = std::numeric_limits<double>::max();
    double ans = a[0][0];
    for (int i = 1; i < ntab; ++i) {
        hh /= con;
        a[0][i] = (f(x + hh) - f(x - hh)) / (2.0 * hh);
        double fac = con2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= con2;
            const double errt = std::max(std::fabs(a[j][i] - a[j - 1][i]),
                                         std::fabs(a[j][i] - a[j - 1][i - 1]));
            if (errt <= err) {
                err = errt;
                ans = a[j][i];
            }
        }
        if (std::fabs(a[i][i] - a[i - 1][i - 1]) >= safe * err)
            break;
    }
    return ans;
}

// Largest root of g on (lo, hi], where g > 0 for all arguments above the root
// and g(hi) > 0. Marches down with a step shorter than the root spacing.
template <class G> double largest_root(G &&g, double lo, double hi, double step) {
    double b = hi;
    double gb = g(b);
    require(gb > 0, ErrorCode::bracket, "zero search: no positive value at upper end");
    for (int it = 0; it < 100000; ++it) {
        const double a = std::max(lo, b - step);
        const double ga = g(a);
        if (ga == 0.0)
            return a;
        if (ga < 0) {
            boost::uintmax_t maxit = 200;
            auto r = boost::math::tools::toms748_solve(
                g, a, b, ga, gb, boost::math::tools::eps_tolerance<double>(50), maxit);
            return 0.5 * (r.first + r.second);
        }
        if (a <= lo)
            break;
        b = a;
        gb = ga;
    }
    throw Error(ErrorCode::bracket, "zero search: no sign change found");
}

} // namespace

AiryValues airy(double t) {
    if (std::fabs(t) <= maclaurin_limit)
        return airy_maclaurin(t);
    return airy_asymptotic(t);
}

AiryZeros airy_first_zeros() {
    static const AiryZeros zeros = [] {
        auto polish = [](double lo, double hi, bool deriv) {
            auto f = [deriv](double t) {
                const auto v = airy(t);
                return deriv ? v.ai_prime : v.ai;
            };
            double flo = f(lo);
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double t = 0.5 * (lo + hi);
            for (int i = 0; i < 3; ++i) {
                const auto v = airy(t);
                // Ai'' = t Ai
                const double step = deriv ? v.ai_prime / (t * v.ai) : v.ai / v.ai_prime;
                if (!std::isfinite(step))
                    break;
                t -= step;
            }
            return t;
        };
        return AiryZeros{polish(-3.0, -2.0, false), polish(-1.5, -0.5, true)};
    }();
    return zeros;
}

double bessel_j(double order, double z) {
    check_argument(z);
    require(std::isfinite(order) && order >= -1.0, ErrorCode::domain,
            "bessel_j: order must be >= -1");
    return j_any(order, z);
}

std::vector<double> bessel_j_sequence(double order, std::size_t count, double z) {
    check_argument(z);
    require(order >= -1.0, ErrorCode::domain, "bessel_j_sequence: order must be >= -1");
    std::vector<double> out(count, 0.0);
    if (count == 0)
        return out;
    const double top = order + static_cast<double>(count - 1);
    int isign = 1;
    const double h = (top >= 0) ? cf1_ratio(top, z, isign) : 0.0;
    if (top < 0) {
        out[0] = j_any(order, z);
        return out;
    }
    // backward recurrence on (J, J') from the top order
    double j = isign * 1e-30, jp = h * j;
    out[count - 1] = j;
    double nu = top;
    for (std::size_t k = count - 1; k > 0; --k) {
        const double jm = nu / z * j + jp;
        const double jpm = (nu - 1.0) / z * jm - j;
        j = jm;
        jp = jpm;
        nu -= 1.0;
        out[k - 1] = j;
        if (std::fabs(j) > 1e200) {
            for (std::size_t i = k - 1; i < count; ++i)
                out[i] *= 1e-200;
            j *= 1e-200;
            jp *= 1e-200;
        }
    }
    // the recurrence is only stable past the turning point; below it use
    // pointwise values
    std::size_t anchor = 0;
    while (anchor + 1 < count && order + static_cast<double>(anchor) < z)
        ++anchor;
    const double s = j_any(order + static_cast<double>(anchor), z) / out[anchor];
    for (std::size_t k = anchor; k < count; ++k)
        out[k] *= s;
    for (std::size_t k = 0; k < anchor; ++k)
        out[k] = j_any(order + static_cast<double>(k), z);
    return out;
}

double bessel_j_dorder(double order, double z) {
    check_argument(z);
    require(std::isfinite(order) && order >= -1.0, ErrorCode::domain,
            "bessel_j_dorder: order must be >= -1");
    // step scaled to the order variation length near the turning point
    const double h = 0.1 * std::max(1.0, std::cbrt(std::fabs(order)));
    return ridders([z](double nu) { return j_any(nu, z); }, order, h);
}

double zero_in_order_seed(double z) {
    const double za = std::fabs(airy_first_zeros().z_a);
    const double g = za / std::cbrt(2.0);
    const double z13 = std::cbrt(z);
    const double z53 = z13 * z13 * z13 * z13 * z13;
    const double g2 = g * g, g3 = g2 * g, g4 = g3 * g, g5 = g4 * g;
    return z - g * z13 + g2 / (30.0 * z13) - (5.0 - g3) / (350.0 * z) +
           (281.0 * g4 - 5220.0 * g) / (567000.0 * z53) +
           (73769.0 * g5 - 3312450.0 * g2) / (654885000.0 * z53 * z13 * z13);
}

double bessel_zero_in_order(double z) {
    check_argument(z);
    const double za = std::fabs(airy_first_zeros().z_a);
    require(z > za, ErrorCode::domain, "bessel_zero_in_order: z must exceed |z_A|");
    auto g = [z](double x) { return j_any(x, z); };
    // J_x(z) > 0 for every x >= z, and the order spacing of zeros exceeds z^{1/3}.
    const double step = 0.25 * std::max(1.0, std::cbrt(z));
    const double seed = zero_in_order_seed(z);
    double hi = z;
    if (seed + step < z && g(seed + step) > 0 && g(seed + 2 * step) > 0)
        hi = seed + step;
    return largest_root(g, -1.0, hi, step);
}

double bessel_zero_in_order_deriv(double z) {
    check_argument(z);
    const double zap = std::fabs(airy_first_zeros().z_a_prime);
    require(z > zap, ErrorCode::domain, "bessel_zero_in_order_deriv: z must exceed |z'_A|");
    auto g = [z](double x) { return j_any(x - 1.0, z) - j_any(x + 1.0, z); };
    const double step = 0.25 * std::max(1.0, std::cbrt(z));
    // invert z(x) from its large-order expansion for a starting point
    const double gp = zap / std::cbrt(2.0);
    auto zx = [gp](double x) {
        const double x13 = std::cbrt(x);
        const double g3 = gp * gp * gp, g5 = g3 * gp * gp, g6 = g3 * g3, g9 = g6 * g3;
        return x + gp * x13 + (0.3 * gp * gp - 0.1 / gp) / x13 -
               (g3 / 350.0 + 0.04 + 1.0 / (200.0 * g3)) / x -
               (958.0 * g9 - 2036.0 * g6 - 84.0 * g3 + 63.0) /
                   (126000.0 * g5 * x * x13 * x13);
    };
    double hi = z;
    if (z > 20.0) {
        double x = z - gp * std::cbrt(z);
        for (int i = 0; i < 50; ++i) {
            const double d = (zx(x) - z) / (1.0 + gp / (3.0 * std::cbrt(x * x)));
            x -= d;
            if (std::fabs(d) < 1e-12 * x)
                break;
        }
        if (x + step < z && g(x + step) > 0 && g(x + 2 * step) > 0)
            hi = x + step;
    }
    return largest_root(g, 0.0, hi, step);
}

ProductSums bessel_product_sums(double x, double z) {
    check_argument(z);
    const double j0 = bessel_j(x, z);
    const double j1 = bessel_j(x + 1.0, z);
    const double j2 = bessel_j(x + 2.0, z);
    require(std::fabs(j0) <= 1e-8 * std::max(std::fabs(j1), 1e-300), ErrorCode::precondition,
            "bessel_product_sums: J_x(z) is not zero");
    const double dj = bessel_j_dorder(x, z);
    return {0.5 * z * j1 * j1, 0.5 * z * j1 * dj, 0.25 * z * j1 * j2};
}

} // namespace phaselimit::specfun
