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
#include "fft.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <fftw3.h>

namespace phaselimit::detail {

namespace {

template <class T> struct FftwArray {
    explicit FftwArray(std::size_t n) : ptr(static_cast<T *>(fftw_malloc(sizeof(T) * (n ? n : 1)))) {}
    ~FftwArray() { fftw_free(ptr); }
    FftwArray(const FftwArray &) = delete;
    FftwArray &operator=(const FftwArray &) = delete;
    T *ptr;
};

enum class Kind { r2c, c2r, c2c_backward };

// Planning is not thread-safe in FFTW; plans are created once under a lock and
// executed afterwards through the new-array interface, which is.
fftw_plan get_plan(Kind kind, std::size_t n) {
    static std::mutex mtx;
    static std::map<std::pair<Kind, std::size_t>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(mtx);
    const auto key = std::make_pair(kind, n);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    const int ni = static_cast<int>(n);
    fftw_plan p = nullptr;
    switch (kind) {
    case Kind::r2c: {
        FftwArray<double> a(n);
        FftwArray<fftw_complex> b(n / 2 + 1);
        p = fftw_plan_dft_r2c_1d(ni, a.ptr, b.ptr, FFTW_ESTIMATE);
        break;
    }
    case Kind::c2r: {
        FftwArray<fftw_complex> a(n / 2 + 1);
        FftwArray<double> b(n);
        p = fftw_plan_dft_c2r_1d(ni, a.ptr, b.ptr, FFTW_ESTIMATE);
        break;
    }
    case Kind::c2c_backward: {
        FftwArray<fftw_complex> a(n), b(n);
        p = fftw_plan_dft_1d(ni, a.ptr, b.ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
        break;
    }
    }
    cache.emplace(key, p);
    return p;
}

} // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

std::vector<std::complex<double>> rfft(const std::vector<double> &in) {
    const std::size_t n = in.size();
    FftwArray<double> a(n);
    FftwArray<fftw_complex> b(n / 2 + 1);
    std::memcpy(a.ptr, in.data(), sizeof(double) * n);
    fftw_execute_dft_r2c(get_plan(Kind::r2c, n), a.ptr, b.ptr);
    std::vector<std::complex<double>> out(n / 2 + 1);
    std::memcpy(static_cast<void *>(out.data()), b.ptr, sizeof(fftw_complex) * out.size());
    return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>> &in, std::size_t n) {
    FftwArray<fftw_complex> a(n / 2 + 1);
    FftwArray<double> b(n);
    std::memcpy(a.ptr, in.data(), sizeof(fftw_complex) * (n / 2 + 1));
    fftw_execute_dft_c2r(get_plan(Kind::c2r, n), a.ptr, b.ptr);
    return std::vector<double>(b.ptr, b.ptr + n);
}

std::vector<std::complex<double>> cfft_backward(const std::vector<std::complex<double>> &in) {
    const std::size_t n = in.size();
    FftwArray<fftw_complex> a(n), b(n);
    std::memcpy(a.ptr, in.data(), sizeof(fftw_complex) * n);
    fftw_execute_dft(get_plan(Kind::c2c_backward, n), a.ptr, b.ptr);
    std::vector<std::complex<double>> out(n);
    std::memcpy(static_cast<void *>(out.data()), b.ptr, sizeof(fftw_complex) * n);
    return out;
}

std::vector<double> autocorrelation(const std::vector<double> &x) {
    const std::size_t n = x.size();
    if (n == 0)
        return {};
    const std::size_t len = next_pow2(2 * n);
    std::vector<double> pad(len, 0.0);
    std::copy(x.begin(), x.end(), pad.begin());
    auto spec = rfft(pad);
    for (auto &c : spec)
        c = std::norm(c);
    auto r = irfft(spec, len);
    std::vector<double> out(n);
    for (std::size_t m = 0; m < n; ++m)
        out[m] = r[m] / static_cast<double>(len);
    return out;
}

} // namespace phaselimit::detail
