// Copyright 2026 The xshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XSHADOW_KERNELS_H
#define XSHADOW_KERNELS_H

// Data-parallel inner loops. Every kernel has an OpenMP version and a plain
// serial version with the same signature; the serial ones are the reference
// the tests compare against and the baseline for bench/.
//
// All parallel kernels are deterministic: results do not depend on the
// number of threads.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xshadow/bitspace.h"

namespace xshadow::kernels {

using Complex = std::complex<double>;

/// In-place fast Walsh-Hadamard butterfly. data.size() must be a power of two.
void walsh_inplace(std::span<double> data);
void walsh_inplace_serial(std::span<double> data);

/// Number of records whose parity against w is odd.
std::size_t odd_parity_count(std::span<const Word> records, Word w);
std::size_t odd_parity_count_serial(std::span<const Word> records, Word w);

/// Histogram of records over {0,1}^n, counts as doubles.
std::vector<double> histogram(std::span<const Word> records, int n);
std::vector<double> histogram_serial(std::span<const Word> records, int n);

/// Applies a 2x2 unitary (row-major u00,u01,u10,u11) to qubit q of a
/// statevector.
void apply_1q(std::span<Complex> amps, int q, const Complex (&u)[4]);
void apply_1q_serial(std::span<Complex> amps, int q, const Complex (&u)[4]);

/// Sum of values, accumulated in fixed-size blocks so the rounding is the
/// same for any thread count.
double block_sum(std::span<const double> values);
double block_sum_serial(std::span<const double> values);

/// Means of `resamples` bootstrap resamples (with replacement, size
/// values.size()). Resample r draws from the RNG stream (seed, r).
std::vector<double> bootstrap_means(std::span<const double> values, int resamples,
                                    std::uint64_t seed);
std::vector<double> bootstrap_means_serial(std::span<const double> values, int resamples,
                                           std::uint64_t seed);

}  // namespace xshadow::kernels

#endif
