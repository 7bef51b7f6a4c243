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
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "phaselimit/canonical.hpp"

namespace phaselimit::suites {

struct Check {
    std::string name;
    double value = 0;
    double limit = 0;
    bool passed = true;
};

struct Report {
    std::string name;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<Check> checks;

    [[nodiscard]] std::size_t violations() const;
    void meta(std::string key, std::string value);
    void meta(std::string key, double value);
    void expect_le(std::string name, double value, double limit);
    void expect_ge(std::string name, double value, double limit);
    void expect(std::string name, bool ok);
};

enum class Metric { holevo, f1, f2, f3, delta };

Metric parse_metric(const std::string &name);
std::string metric_name(Metric m);

struct CurveConfig {
    Metric metric = Metric::holevo;
    canonical::SpectrumKind kind = canonical::SpectrumKind::nonneg;
    std::vector<double> targets;
    std::size_t threads = 0;
    double mean_tolerance = 1e-6;
    double cutoff_factor = 10.0;
    std::size_t cutoff_floor = 100;
    double residual_tolerance = 1e-8; // relative to 1 + |alpha|
};

// columns: mean, delta, delta_H, delta_1, delta_2, delta_3, scaled, beta, alpha, cutoff, residual
Report curve(const CurveConfig &cfg);

struct SeriesConfig {
    canonical::SpectrumKind kind = canonical::SpectrumKind::nonneg;
    std::vector<double> targets;
    std::size_t terms = 5;
    double mean_tolerance = 1e-6;
};

// numeric Holevo variance (nonneg) or delta_1^2 (symmetric) against the series
Report series(const SeriesConfig &cfg);

Report verify_inequalities(std::size_t grid_points = 1000000);
Report verify_povm(std::uint64_t seed = 42, std::size_t instances = 100);
Report verify_bounds(std::uint64_t seed = 42, std::size_t states = 1000, std::size_t max_dim = 200);
Report verify_mzi(double visibility = 0.99, std::size_t grid_points = 1000);
Report verify_probe(double mu = 1.0, double delta_exp = 1.0, std::vector<long long> m_values = {100, 10000, 1000000});

} // namespace phaselimit::suites
