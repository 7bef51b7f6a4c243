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
#include "phaselimit/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "fft.hpp"
#include "phaselimit/errors.hpp"

namespace phaselimit::eigensolve {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(s);
}

double norm2(const std::vector<double> &a) { return std::sqrt(dot(a, a)); }

void scale(std::vector<double> &a, double s) {
    for (auto &v : a)
        v *= s;
}

void axpy(double alpha, const std::vector<double> &x, std::vector<double> &y) {
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += alpha * x[i];
}

// first component above the noise floor made positive
void fix_sign(std::vector<double> &v) {
    double m = 0;
    for (double x : v)
        m = std::max(m, std::fabs(x));
    for (double x : v) {
        if (std::fabs(x) > 1e-12 * m) {
            if (x < 0)
                scale(v, -1.0);
            return;
        }
    }
}

std::vector<double> geometric_start(std::size_t n) {
    std::vector<double> v(n);
    const double rho = 1.0 - 1.0 / (1.0 + std::sqrt(static_cast<double>(n)));
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = p;
        p *= rho;
        if (p < 1e-150)
            p = 1e-150;
    }
    scale(v, 1.0 / norm2(v));
    return v;
}

void perturb(std::vector<double> &v) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double m = norm2(v) / std::sqrt(static_cast<double>(v.size()));
    for (auto &x : v)
        x += 0.1 * m * u(rng);
    scale(v, 1.0 / norm2(v));
}

std::size_t iteration_cap(std::size_t n) {
    return static_cast<std::size_t>(50.0 * std::sqrt(static_cast<double>(n))) + 50;
}

template <class Op>
double residual_of(const Op &mul, const std::vector<double> &v, double lambda) {
    std::vector<double> av(v.size());
    mul(v.data(), av.data());
    axpy(-lambda, v, av);
    return norm2(av);
}

} // namespace

BandedSymmetric::BandedSymmetric(std::size_t dim, std::size_t bandwidth) : dimension(dim) {
    for (std::size_t k = 0; k <= bandwidth; ++k)
        diagonals.emplace_back(dim > k ? dim - k : 0, 0.0);
}

double BandedSymmetric::norm_bound() const {
    double m = 0;
    for (std::size_t i = 0; i < dimension; ++i) {
        double r = std::fabs(diagonals[0][i]);
        for (std::size_t k = 1; k < diagonals.size(); ++k) {
            if (i + k < dimension)
                r += std::fabs(diagonals[k][i]);
            if (i >= k)
                r += std::fabs(diagonals[k][i - k]);
        }
        m = std::max(m, r);
    }
    return m;
}

void BandedSymmetric::multiply(const double *x, double *y) const {
    for (std::size_t i = 0; i < dimension; ++i)
        y[i] = diagonals[0][i] * x[i];
    for (std::size_t k = 1; k < diagonals.size(); ++k) {
        const auto &d = diagonals[k];
        for (std::size_t i = 0; i < d.size(); ++i) {
            y[i] += d[i] * x[i + k];
            y[i + k] += d[i] * x[i];
        }
    }
}

void DenseSymmetric::set(std::size_t i, std::size_t j, double v) {
    at(i, j) = v;
    at(j, i) = v;
}

double DenseSymmetric::norm_bound() const {
    double m = 0;
    for (std::size_t i = 0; i < dimension; ++i) {
        double r = 0;
        for (std::size_t j = 0; j < dimension; ++j)
            r += std::fabs(at(i, j));
        m = std::max(m, r);
    }
    return m;
}

void DenseSymmetric::multiply(const double *x, double *y) const {
    for (std::size_t i = 0; i < dimension; ++i) {
        double s = 0;
        const double *row = &entries[i * dimension];
        for (std::size_t j = 0; j < dimension; ++j)
            s += row[j] * x[j];
        y[i] = s;
    }
}

ToeplitzPlusDiagonal::ToeplitzPlusDiagonal(std::vector<double> first_column,
                                           std::vector<double> diagonal)
    : column_(std::move(first_column)), diag_(std::move(diagonal)) {
    const std::size_t n = column_.size();
    require(n >= 1 && diag_.size() == n, ErrorCode::invalid_argument,
            "ToeplitzPlusDiagonal: size mismatch");
    embed_ = detail::next_pow2(2 * n);
    std::vector<double> c(embed_, 0.0);
    c[0] = column_[0];
    for (std::size_t k = 1; k < n; ++k) {
        c[k] = column_[k];
        c[embed_ - k] = column_[k];
    }
    const auto spec = detail::rfft(c);
    symbol_.resize(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        symbol_[i] = spec[i].real() / static_cast<double>(embed_);
    double t = std::fabs(column_[0]);
    for (std::size_t k = 1; k < n; ++k)
        t += 2 * std::fabs(column_[k]);
    double dm = 0;
    for (double d : diag_)
        dm = std::max(dm, std::fabs(d));
    norm_ = t + dm;
}

void ToeplitzPlusDiagonal::multiply(const double *x, double *y) const {
    const std::size_t n = column_.size();
    if (n <= 32) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = diag_[i] * x[i];
            for (std::size_t j = 0; j < n; ++j)
                s += column_[i > j ? i - j : j - i] * x[j];
            y[i] = s;
        }
        return;
    }
    std::vector<double> pad(embed_, 0.0);
    std::copy(x, x + n, pad.begin());
    auto spec = detail::rfft(pad);
    for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] *= symbol_[i];
    const auto r = detail::irfft(spec, embed_);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = r[i] + diag_[i] * x[i];
}

DenseSymmetric ToeplitzPlusDiagonal::to_dense() const {
    const std::size_t n = column_.size();
    DenseSymmetric d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d.at(i, j) = column_[i > j ? i - j : j - i] + (i == j ? diag_[i] : 0.0);
    return d;
}

bool BandLdl::factor(const BandedSymmetric &a, double s, double shift) {
    n_ = a.dimension;
    b_ = a.bandwidth();
    l_.assign(n_ * std::max<std::size_t>(b_, 1), 0.0);
    d_.assign(n_, 0.0);
    const std::size_t b = b_;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = i >= b ? i - b : 0;
        double *li = &l_[i * b];
        for (std::size_t j = j0; j < i; ++j) {
            double sum = s * a.diagonals[i - j][j];
            const double *lj = &l_[j * b];
            const std::size_t k0 = std::max(j0, j >= b ? j - b : 0);
            for (std::size_t k = k0; k < j; ++k)
                sum -= li[k + b - i] * d_[k] * lj[k + b - j];
            li[j + b - i] = sum / d_[j];
        }
        double dd = s * a.diagonals[0][i] + shift;
        for (std::size_t k = j0; k < i; ++k) {
            const double lk = li[k + b - i];
            dd -= lk * lk * d_[k];
        }
        if (!(dd > 0))
            return false;
        d_[i] = dd;
    }
    return true;
}

void BandLdl::solve(const double *rhs, double *x) const {
    const std::size_t b = b_;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = rhs[i];
        const std::size_t j0 = i >= b ? i - b : 0;
        for (std::size_t k = j0; k < i; ++k)
            s -= l_[i * b + k + b - i] * x[k];
        x[i] = s;
    }
    for (std::size_t i = 0; i < n_; ++i)
        x[i] /= d_[i];
    for (std::size_t ii = n_; ii-- > 0;) {
        double s = x[ii];
        const std::size_t j1 = std::min(n_ - 1, ii + b);
        for (std::size_t k = ii + 1; k <= j1; ++k)
            s -= l_[k * b + ii + b - k] * x[k];
        x[ii] = s;
    }
}

std::size_t count_above(const BandedSymmetric &a, double sigma) {
    // inertia of sigma*I - a; for bandwidth 1 this is the Sturm sequence count
    const std::size_t n = a.dimension, b = a.bandwidth();
    std::vector<double> l(n * std::max<std::size_t>(b, 1), 0.0), d(n, 0.0);
    const double tiny = eps * std::max(a.norm_bound(), 1e-300);
    std::size_t neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i >= b ? i - b : 0;
        double *li = &l[i * b];
        for (std::size_t j = j0; j < i; ++j) {
            double sum = -a.diagonals[i - j][j];
            const double *lj = &l[j * b];
            const std::size_t k0 = std::max(j0, j >= b ? j - b : 0);
            for (std::size_t k = k0; k < j; ++k)
                sum -= li[k + b - i] * d[k] * lj[k + b - j];
            li[j + b - i] = sum / d[j];
        }
        double dd = sigma - a.diagonals[0][i];
        for (std::size_t k = j0; k < i; ++k)
            dd -= li[k + b - i] * li[k + b - i] * d[k];
        if (dd == 0.0)
            dd = -tiny;
        if (dd < 0)
            ++neg;
        d[i] = dd;
    }
    return neg;
}

EigenPair extremal_eigenpair(const BandedSymmetric &a, Which which) {
    const std::size_t n = a.dimension;
    require(n >= 1 && a.diagonals.size() >= 1, ErrorCode::invalid_argument,
            "extremal_eigenpair: empty matrix");
    const double s = which == Which::largest ? 1.0 : -1.0;
    const double norm = std::max(a.norm_bound(), 1e-300);
    auto mul = [&](const double *x, double *y) {
        a.multiply(x, y);
        for (std::size_t i = 0; i < n; ++i)
            y[i] *= s;
    };
    // lambda_max(s*a) lies in [max diagonal, Gershgorin bound]
    double lo = -std::numeric_limits<double>::infinity(), hi = lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0;
        for (std::size_t k = 1; k < a.diagonals.size(); ++k) {
            if (i + k < n)
                r += std::fabs(a.diagonals[k][i]);
            if (i >= k)
                r += std::fabs(a.diagonals[k][i - k]);
        }
        lo = std::max(lo, s * a.diagonals[0][i]);
        hi = std::max(hi, s * a.diagonals[0][i] + r);
    }
    hi += 4 * eps * norm + 1e-300;
    BandLdl ldl;
    int it = 0;
    while (hi - lo > 2 * eps * norm && it < 200) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (ldl.factor(a, -s, mid))
            hi = mid;
        else
            lo = mid;
        ++it;
    }
    double shift = hi;
    while (!ldl.factor(a, -s, shift))
        shift += 4 * eps * norm + std::fabs(shift) * eps;

    std::vector<double> v = geometric_start(n), w(n), av(n);
    EigenPair out;
    const double tol = 1e-13 * norm;
    for (int k = 0; k < 60; ++k) {
        ldl.solve(v.data(), w.data());
        const double wn = norm2(w);
        if (!(wn > 0) || !std::isfinite(wn)) {
            perturb(v);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            v[i] = w[i] / wn;
        mul(v.data(), av.data());
        const double lam = dot(v, av);
        axpy(-lam, v, av);
        out.value = lam;
        out.residual = norm2(av);
        out.iterations = it + k + 1;
        if (out.residual <= tol && k >= 1)
            break;
    }
    require(out.residual <= 1e-10 * norm, ErrorCode::convergence,
            "extremal_eigenpair: inverse iteration did not converge");
    fix_sign(v);
    out.value *= s;
    out.vector = std::move(v);
    return out;
}

EigenPair extremal_eigenpair(const DenseSymmetric &a, Which which, const SolveOptions &opt) {
    const std::size_t n = a.dimension;
    require(n >= 1 && a.entries.size() == n * n, ErrorCode::invalid_argument,
            "extremal_eigenpair: bad dense matrix");
    const double s = which == Which::largest ? 1.0 : -1.0;
    const double norm = std::max(a.norm_bound(), 1e-300);
    auto mul = [&](const double *x, double *y) {
        a.multiply(x, y);
        for (std::size_t i = 0; i < n; ++i)
            y[i] *= s;
    };
    std::vector<double> start = (opt.start && opt.start->size() == n) ? *opt.start : geometric_start(n);
    scale(start, 1.0 / norm2(start));
    const std::size_t cap = std::min(n, iteration_cap(n));
    EigenPair out;
    int total = 0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<std::vector<double>> q{start};
        std::vector<double> alpha, beta;
        std::vector<double> w(n), ritz;
        for (std::size_t k = 0; k < cap; ++k) {
            mul(q[k].data(), w.data());
            ++total;
            alpha.push_back(dot(q[k], w));
            axpy(-alpha.back(), q[k], w);
            if (k > 0)
                axpy(-beta.back(), q[k - 1], w);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto &qj : q)
                    axpy(-dot(qj, w), qj, w);
            const double bk = norm2(w);
            const std::size_t m = alpha.size();
            Eigen::VectorXd dg(m), sd(m > 1 ? m - 1 : 1);
            for (std::size_t i = 0; i < m; ++i)
                dg[i] = alpha[i];
            for (std::size_t i = 0; i + 1 < m; ++i)
                sd[i] = beta[i];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(dg, sd.head(m - 1), Eigen::ComputeEigenvectors);
            const Eigen::VectorXd y = es.eigenvectors().col(m - 1);
            ritz.assign(m, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                ritz[i] = y[i];
            if (bk * std::fabs(y[m - 1]) <= opt.tolerance * norm || bk <= eps * norm || k + 1 == cap)
                break;
            beta.push_back(bk);
            scale(w, 1.0 / bk);
            q.push_back(w);
        }
        std::vector<double> x(n, 0.0);
        for (std::size_t i = 0; i < ritz.size(); ++i)
            axpy(ritz[i], q[i], x);
        scale(x, 1.0 / norm2(x));
        out.value = dot(x, [&] {
            std::vector<double> ax(n);
            mul(x.data(), ax.data());
            return ax;
        }());
        out.residual = residual_of(mul, x, out.value);
        out.vector = x;
        out.iterations = total;
        if (out.residual <= 1e-11 * norm)
            break;
        start = x;
        if (attempt == 0)
            perturb(start);
    }
    require(out.residual <= 1e-10 * norm, ErrorCode::convergence,
            "extremal_eigenpair: Lanczos did not converge");
    fix_sign(out.vector);
    out.value *= s;
    return out;
}

EigenPair extremal_eigenpair(const ToeplitzPlusDiagonal &a, Which which, const SolveOptions &opt) {
    const std::size_t n = a.dimension();
    const double s = which == Which::largest ? 1.0 : -1.0;
    const double norm = std::max(a.norm_bound(), 1e-300);
    auto mul = [&](const double *x, double *y) {
        a.multiply(x, y);
        if (s < 0)
            for (std::size_t i = 0; i < n; ++i)
                y[i] = -y[i];
    };
    // LOBPCG for the smallest eigenvalue of -s*a, i.e. the requested end of a
    auto bmul = [&](const double *x, double *y) {
        mul(x, y);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = -y[i];
    };
    BandLdl prec;
    bool use_prec = false;
    if (opt.preconditioner && which == Which::smallest) {
        require(opt.preconditioner->dimension == n, ErrorCode::invalid_argument,
                "preconditioner dimension mismatch");
        use_prec = prec.factor(*opt.preconditioner, 1.0, 0.0);
    }
    std::vector<double> start = (opt.start && opt.start->size() == n) ? *opt.start : geometric_start(n);
    scale(start, 1.0 / norm2(start));
    const std::size_t cap = iteration_cap(n);
    EigenPair out;
    int total = 0;
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<double> x = start, bx(n), p, bp, w(n), bw(n), r(n);
        bmul(x.data(), bx.data());
        double lam = dot(x, bx);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t it = 0; it < cap; ++it) {
            ++total;
            if (it % 20 == 19) {
                bmul(x.data(), bx.data());
                lam = dot(x, bx);
            }
            for (std::size_t i = 0; i < n; ++i)
                r[i] = bx[i] - lam * x[i];
            const double rn = norm2(r);
            best = std::min(best, rn);
            if (rn <= opt.tolerance * norm)
                break;
            if (use_prec)
                prec.solve(r.data(), w.data());
            else
                w = r;
            std::vector<std::vector<double>> v{x, w}, bv{bx, {}};
            if (!p.empty()) {
                v.push_back(p);
                bv.push_back(bp);
            }
            // orthonormalize w and p against earlier columns; products follow linearly
            std::vector<std::vector<double>> q{x}, bq{bx};
            bool w_done = false;
            for (std::size_t c = 1; c < v.size(); ++c) {
                auto col = v[c];
                const double n0 = norm2(col);
                std::vector<double> coef(q.size(), 0.0);
                for (int pass = 0; pass < 2; ++pass)
                    for (std::size_t j = 0; j < q.size(); ++j) {
                        const double h = dot(q[j], col);
                        coef[j] += h;
                        axpy(-h, q[j], col);
                    }
                const double n1 = norm2(col);
                if (!(n1 > 1e-10 * n0) || n1 == 0.0)
                    continue;
                scale(col, 1.0 / n1);
                std::vector<double> bc(n);
                if (c == 1) {
                    // the residual direction needs a fresh product
                    bmul(col.data(), bc.data());
                    w_done = true;
                } else {
                    bc = bv[c];
                    for (std::size_t j = 0; j < q.size(); ++j)
                        axpy(-coef[j], bq[j], bc);
                    scale(bc, 1.0 / n1);
                }
                q.push_back(std::move(col));
                bq.push_back(std::move(bc));
            }
            (void)w_done;
            if (q.size() == 1)
                break;
            const std::size_t m = q.size();
            Eigen::MatrixXd g(m, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i; j < m; ++j) {
                    const double gij = 0.5 * (dot(q[i], bq[j]) + dot(q[j], bq[i]));
                    g(i, j) = g(j, i) = gij;
                }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
            const Eigen::VectorXd c = es.eigenvectors().col(0);
            std::vector<double> xn(n, 0.0), bxn(n, 0.0), pn(n, 0.0), bpn(n, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                axpy(c[j], q[j], xn);
                axpy(c[j], bq[j], bxn);
                if (j > 0) {
                    axpy(c[j], q[j], pn);
                    axpy(c[j], bq[j], bpn);
                }
            }
            const double xnrm = norm2(xn);
            scale(xn, 1.0 / xnrm);
            scale(bxn, 1.0 / xnrm);
            x.swap(xn);
            bx.swap(bxn);
            p.swap(pn);
            bp.swap(bpn);
            lam = dot(x, bx);
        }
        bmul(x.data(), bx.data());
        lam = dot(x, bx);
        out.value = -lam;
        out.residual = residual_of(bmul, x, lam);
        out.vector = x;
        out.iterations = total;
        if (out.residual <= 1e-11 * norm)
            break;
        start = x;
        perturb(start);
    }
    require(out.residual <= 1e-10 * norm, ErrorCode::convergence,
            "extremal_eigenpair: LOBPCG did not converge");
    fix_sign(out.vector);
    out.value *= s;
    return out;
}

} // namespace phaselimit::eigensolve
