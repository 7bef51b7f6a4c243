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
#include <vector>

namespace phaselimit::specfun {

struct AiryValues {
    double ai;
    double ai_prime;
};

// Ai(t), Ai'(t); absolute error below 1e-12 on |t| <= 10.
AiryValues airy(double t);

struct AiryZeros {
    double z_a;       // first zero of Ai
    double z_a_prime; // first zero of Ai'
};

AiryZeros airy_first_zeros();

// J_order(z) for order >= -1, 0 < z <= 3e5.
double bessel_j(double order, double z);

// J_{order + k}(z), k = 0 .. count-1, by backward recurrence.
std::vector<double> bessel_j_sequence(double order, std::size_t count,
                                      double z);

// d/d(order) J_order(z).
double bessel_j_dorder(double order, double z);

// Largest x with J_x(z) = 0. Requires z > |z_A|.
double bessel_zero_in_order(double z);

// Largest x with dJ_x(z)/dz = 0. Requires z > |z'_A|.
double bessel_zero_in_order_deriv(double z);

struct ProductSums {
    double s11;  // sum_{k>=1} J_{x+k} J_{x+k+1}
    double s_sq; // sum_{k>=1} J_{x+k}^2
    double s12;  // sum_{k>=1} J_{x+k} J_{x+k+2}
};

// Closed forms of the Bessel product sums at a zero J_x(z) = 0.
ProductSums bessel_product_sums(double x, double z);

// Asymptotic seed for the zero in order.
double zero_in_order_seed(double z);

} // namespace phaselimit::specfun
