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
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phaselimit/phaselimit.h"

namespace {

enum Exit { success = 0, verification_failure = 1, config_error = 2, solver_failure = 3 };

struct Failure {
    int code;
    std::string message;
};

using ReportPtr = std::unique_ptr<pl_report, decltype(&pl_report_free)>;

int exit_for(pl_status s) {
    return s == PL_ERR_INVALID_ARGUMENT || s == PL_ERR_PRECONDITION ? config_error : solver_failure;
}

template <class F> ReportPtr take(F &&call) {
    pl_report *r = nullptr;
    const pl_status s = call(&r);
    if (s != PL_OK)
        throw Failure{exit_for(s), std::string(pl_status_name(s)) + ": " + pl_last_error()};
    return {r, pl_report_free};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// min:max:count(log|lin)
std::vector<double> parse_range(const std::string &spec) {
    const auto a = spec.find(':'), b = spec.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw Failure{config_error, "range must look like min:max:countlog or min:max:countlin"};
    std::string tail = spec.substr(b + 1);
    const bool logs = tail.size() > 3 && tail.compare(tail.size() - 3, 3, "log") == 0;
    const bool lin = tail.size() > 3 && tail.compare(tail.size() - 3, 3, "lin") == 0;
    if (!logs && !lin)
        throw Failure{config_error, "range count must end in log or lin"};
    double lo = 0, hi = 0;
    long count = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(spec.substr(0, a), &used);
        hi = std::stod(spec.substr(a + 1, b - a - 1));
        count = std::stol(tail.substr(0, tail.size() - 3), &used);
        if (used != tail.size() - 3)
            throw std::invalid_argument("count");
    } catch (const std::exception &) {
        throw Failure{config_error, "cannot parse range '" + spec + "'"};
    }
    if (count < 0 || !(lo <= hi) || (logs && lo <= 0) || (count > 1 && lo == hi))
        throw Failure{config_error, "range needs 0 < min < max (log) or min < max (lin) and count >= 0"};
    std::vector<double> v(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double t = count > 1 ? double(i) / double(count - 1) : 0.0;
        v[std::size_t(i)] = logs ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    if (count > 0)
        v.front() = lo;
    if (count > 1)
        v.back() = hi;
    return v;
}

// Writes to a sibling temporary and renames on success; "-" is stdout.
class Output {
  public:
    explicit Output(std::string path) : path_(std::move(path)) {
        if (path_ != "-") {
            tmp_ = path_ + ".partial";
            file_.open(tmp_, std::ios::binary | std::ios::trunc);
            if (!file_)
                throw Failure{config_error, "cannot open " + path_ + ": " + std::strerror(errno)};
        }
    }
    ~Output() {
        if (!tmp_.empty() && !done_) {
            file_.close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }
    std::ostream &stream() { return path_ == "-" ? std::cout : file_; }
    void commit() {
        stream().flush();
        if (!tmp_.empty()) {
            file_.close();
            if (!file_)
                throw Failure{solver_failure, "write failed for " + path_};
            std::filesystem::rename(tmp_, path_);
        }
        done_ = true;
    }

  private:
    std::string path_, tmp_;
    std::ofstream file_;
    bool done_ = false;
};

using Meta = std::vector<std::pair<std::string, std::string>>;

void write_header(std::ostream &os, const pl_report *r, const Meta &extra) {
    os << "# tool=phaselimit\n";
    for (const auto &[k, v] : extra)
        os << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < pl_report_meta_count(r); ++i)
        os << "# " << pl_report_meta_key(r, i) << '=' << pl_report_meta_value(r, i) << '\n';
}

void write_checks_meta(std::ostream &os, const pl_report *r) {
    for (std::size_t i = 0; i < pl_report_check_count(r); ++i) {
        pl_check c;
        pl_report_check(r, i, &c);
        os << "# check." << c.name << '=' << (c.passed ? "pass" : "fail") << " value=" << fmt17(c.value)
           << " limit=" << fmt17(c.limit) << '\n';
    }
}

void write_table(std::ostream &os, const pl_report *r) {
    const std::size_t cols = pl_report_column_count(r);
    for (std::size_t j = 0; j < cols; ++j)
        os << (j ? "," : "") << pl_report_column_name(r, j);
    os << '\n';
    for (std::size_t i = 0; i < pl_report_row_count(r); ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            os << (j ? "," : "") << fmt17(pl_report_value(r, i, j));
        os << '\n';
    }
}

void write_check_table(std::ostream &os, const pl_report *r) {
    os << "check,value,limit,passed\n";
    for (std::size_t i = 0; i < pl_report_check_count(r); ++i) {
        pl_check c;
        pl_report_check(r, i, &c);
        os << c.name << ',' << fmt17(c.value) << ',' << fmt17(c.limit) << ',' << c.passed << '\n';
    }
}

pl_spectrum spectrum_of(const std::string &s) {
    if (s == "nonneg")
        return PL_SPECTRUM_NONNEG;
    if (s == "symmetric")
        return PL_SPECTRUM_SYMMETRIC;
    throw Failure{config_error, "spectrum must be nonneg or symmetric"};
}

pl_metric metric_of(const std::string &s) {
    static const std::map<std::string, pl_metric> m{{"holevo", PL_METRIC_HOLEVO}, {"f1", PL_METRIC_F1},
                                                    {"f2", PL_METRIC_F2},         {"f3", PL_METRIC_F3},
                                                    {"delta", PL_METRIC_DELTA},   {"theta_sq", PL_METRIC_DELTA}};
    const auto it = m.find(s);
    if (it == m.end())
        throw Failure{config_error, "metric must be one of holevo, f1, f2, f3, delta"};
    return it->second;
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty())
            continue;
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception &) {
            throw Failure{config_error, "cannot parse target '" + item + "'"};
        }
    }
    return v;
}

std::vector<double> targets_of(const std::string &range, const std::string &list) {
    if (!range.empty() && !list.empty())
        throw Failure{config_error, "give either --range or --targets, not both"};
    return range.empty() ? parse_list(list) : parse_range(range);
}

std::string join(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ";" : "") + fmt17(v[i]);
    return s;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"phaselimit: numerical limits of phase estimation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pl_version()));
    app.footer("Ranges: min:max:countlog or min:max:countlin, e.g. 1e-2:1e4:60log.\n"
               "Exit codes: 0 success, 1 verification failure, 2 configuration error, 3 solver failure.");

    std::string output = "-";

    // curve
    auto *curve = app.add_subcommand("curve", "optimal states over a range of mean constraints");
    std::string metric = "holevo", spectrum = "nonneg", range;
    std::string targets;
    pl_curve_config cc;
    pl_curve_config_init(&cc);
    curve->add_option("--metric", metric, "holevo, f1, f2, f3 or delta")->capture_default_str();
    curve->add_option("--spectrum", spectrum, "nonneg or symmetric")->capture_default_str();
    curve->add_option("--range", range, "target range min:max:count(log|lin)");
    curve->add_option("--targets", targets, "comma separated targets");
    curve->add_option("--threads", cc.threads, "worker threads, 0 for all cores")->capture_default_str();
    curve->add_option("--tolerance", cc.mean_tolerance, "relative tolerance on the mean")->capture_default_str();
    curve->add_option("--cutoff-factor", cc.cutoff_factor, "initial cutoff = factor * target")->capture_default_str();
    curve->add_option("--cutoff-floor", cc.cutoff_floor, "minimum cutoff")->capture_default_str();
    curve->add_option("--residual-tolerance", cc.residual_tolerance, "eigen residual / (1 + |alpha|) limit")
        ->capture_default_str();
    curve->add_option("-o,--output", output, "CSV path, - for stdout")->capture_default_str();

    // series
    auto *series = app.add_subcommand("series", "optimal Holevo variance against its asymptotic series");
    std::size_t terms = 5;
    double series_tol = 1e-6;
    series->add_option("--spectrum", spectrum, "nonneg or symmetric")->capture_default_str();
    series->add_option("--range", range, "target range min:max:count(log|lin), targets >= 10");
    series->add_option("--targets", targets, "comma separated targets");
    series->add_option("--terms", terms, "series terms")->capture_default_str();
    series->add_option("--tolerance", series_tol, "relative tolerance on the mean")->capture_default_str();
    series->add_option("-o,--output", output, "CSV path, - for stdout")->capture_default_str();

    // verify
    auto *verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    std::string data;
    std::uint64_t seed = 42;
    std::size_t grid = 1000000, instances = 100, states = 1000, max_dim = 200, mzi_grid = 1000;
    double visibility = 0.99, mu = 1.0, delta_exp = 1.0;
    std::vector<long long> m_values{100, 10000, 1000000};
    auto common = [&](CLI::App *s) {
        s->add_option("-o,--output", output, "check CSV path, - for stdout")->capture_default_str();
        s->add_option("--data", data, "optional CSV path for the suite's data table");
    };
    auto *v_ineq = verify->add_subcommand("inequalities", "cosine surrogates against theta^2 on a grid");
    v_ineq->add_option("--grid", grid, "grid points on [-pi, pi]")->capture_default_str();
    auto *v_povm = verify->add_subcommand("povm", "covariant averaging, reduction and continuity checks");
    v_povm->add_option("--seed", seed)->capture_default_str();
    v_povm->add_option("--instances", instances)->capture_default_str();
    auto *v_bounds = verify->add_subcommand("bounds", "entropic and Heisenberg bounds on random states");
    v_bounds->add_option("--seed", seed)->capture_default_str();
    v_bounds->add_option("--states", states)->capture_default_str();
    v_bounds->add_option("--max-dim", max_dim)->capture_default_str();
    auto *v_mzi = verify->add_subcommand("mzi", "single photon interferometer with a biased estimator");
    v_mzi->add_option("--visibility", visibility)->capture_default_str();
    v_mzi->add_option("--grid", mzi_grid, "open phase grid points")->capture_default_str();
    auto *v_probe = verify->add_subcommand("probe", "scaling with the number of probe states");
    v_probe->add_option("--mu", mu, "mean photon number per probe")->capture_default_str();
    v_probe->add_option("--delta", delta_exp, "exponent delta > 0")->capture_default_str();
    v_probe->add_option("--m", m_values, "comma separated probe counts")->delimiter(',')->capture_default_str();
    for (auto *s : {v_ineq, v_povm, v_bounds, v_mzi, v_probe})
        common(s);

    auto *constants = app.add_subcommand("constants", "print the scaling constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? success : config_error;
    }

    try {
        if (constants->parsed()) {
            pl_constants c;
            if (pl_get_constants(&c) != PL_OK)
                throw Failure{solver_failure, pl_last_error()};
            std::printf("k_A=%.17g\nk_C=%.17g\nk_C_prime=%.17g\nz_A=%.17g\nz_A_prime=%.17g\n", c.k_A, c.k_C,
                        c.k_C_prime, c.z_A, c.z_A_prime);
            return success;
        }
        if (curve->parsed()) {
            const auto t = targets_of(range, targets);
            cc.metric = metric_of(metric);
            cc.spectrum = spectrum_of(spectrum);
            cc.targets = t.data();
            cc.count = t.size();
            Output out(output);
            auto r = take([&](pl_report **o) { return pl_run_curve(&cc, o); });
            write_header(out.stream(), r.get(), {{"command", "curve"}, {"targets", join(t)}});
            write_checks_meta(out.stream(), r.get());
            write_table(out.stream(), r.get());
            out.commit();
            if (pl_report_violations(r.get()) > 0) {
                std::cerr << "solver residual check failed\n";
                return solver_failure;
            }
            return success;
        }
        if (series->parsed()) {
            const auto t = targets_of(range, targets);
            Output out(output);
            const pl_spectrum sp = spectrum_of(spectrum);
            auto r = take([&](pl_report **o) { return pl_run_series(sp, t.data(), t.size(), terms, series_tol, o); });
            write_header(out.stream(), r.get(), {{"command", "series"}, {"targets", join(t)}});
            write_table(out.stream(), r.get());
            out.commit();
            return success;
        }
        // verify
        Meta extra{{"command", "verify"}};
        auto r = take([&](pl_report **o) {
            if (v_ineq->parsed())
                return pl_verify_inequalities(grid, o);
            if (v_povm->parsed())
                return pl_verify_povm(seed, instances, o);
            if (v_bounds->parsed())
                return pl_verify_bounds(seed, states, max_dim, o);
            if (v_mzi->parsed())
                return pl_verify_mzi(visibility, mzi_grid, o);
            return pl_verify_probe(mu, delta_exp, m_values.data(), m_values.size(), o);
        });
        Output out(output);
        std::unique_ptr<Output> data_out = data.empty() ? nullptr : std::make_unique<Output>(data);
        write_header(out.stream(), r.get(), extra);
        write_check_table(out.stream(), r.get());
        if (data_out) {
            write_header(data_out->stream(), r.get(), extra);
            write_table(data_out->stream(), r.get());
        }
        out.commit();
        if (data_out)
            data_out->commit();

        std::ostream &human = output == "-" ? std::cerr : std::cout;
        const std::size_t bad = pl_report_violations(r.get());
        for (std::size_t i = 0; i < pl_report_check_count(r.get()); ++i) {
            pl_check c;
            pl_report_check(r.get(), i, &c);
            human << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << c.value << "  limit=" << c.limit
                  << '\n';
        }
        human << pl_report_name(r.get()) << ": " << pl_report_check_count(r.get()) << " checks, " << bad
              << " violations\n";
        return bad == 0 ? success : verification_failure;
    } catch (const Failure &f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return solver_failure;
    }
}
