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

#include <complex>
#include <cstddef>
#include <vector>

namespace phaselimit::detail {

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

// Real-to-complex forward transform of length n (n/2+1 outputs).
std::vector<std::complex<double>> rfft(const std::vector<double> &in);

// Inverse of rfft, unnormalized (result scaled by n).
std::vector<double> irfft(const std::vector<std::complex<double>> &in, std::size_t n);

// Complex backward transform (sum_n a_n e^{+2 pi i n j / N}), unnormalized.
std::vector<std::complex<double>> cfft_backward(const std::vector<std::complex<double>> &in);

// Autocorrelation c_m = sum_n x_n x_{n+m}, m = 0 .. n-1.
std::vector<double> autocorrelation(const std::vector<double> &x);

} // namespace phaselimit::detail
