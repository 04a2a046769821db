// Copyright 2026 The freqdoor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference implementations for tests. Written straight from the defining
// formulas; they share no code with the library.

#include <array>
#include <cstddef>
#include <vector>

namespace freqdoor::oracle {

// X(k1,k2) = sum_n1 sum_n2 x(n1,n2) c(n1,k1) c(n2,k2), orthonormal scaling,
// evaluated as the literal quadruple loop. x is row-major n x n.
std::vector<double> dct2_direct(const std::vector<double>& x, int n);
std::vector<double> idct2_direct(const std::vector<double>& coeffs, int n);

// Y/U/V rows written out term by term.
std::array<double, 3> rgb_to_yuv_direct(double r, double g, double b, bool verbatim = false);
std::array<double, 3> yuv_to_rgb_direct(double y, double u, double v, bool verbatim = false);

// COPOD with O(n^2) counting ECDFs and a two-pass skewness.
// values is row-major rows x cols.
std::vector<double> copod_brute_force(const std::vector<double>& values, std::size_t rows,
                                      std::size_t cols);

// exp(-(i^2 + j^2) / (2 sigma^2)) / sum over the window, row-major.
std::vector<double> gaussian_stencil(int window, double sigma);

// Local mean/variance by explicit window loops with half-sample reflection,
// then the Wiener rule; plane is row-major h x w. Returns unquantized output.
std::vector<double> wiener_direct(const std::vector<double>& plane, int h, int w, int window);

}  // namespace freqdoor::oracle
