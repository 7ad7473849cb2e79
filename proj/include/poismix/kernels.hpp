// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POISMIX_KERNELS_HPP
#define POISMIX_KERNELS_HPP

#include <cstddef>
#include <span>

// Vector and CSR arithmetic kernels used by the iterative solvers. Each
// operation has a scalar reference implementation and may have SIMD
// variants; the backend is chosen once at runtime from CPU features and
// can be pinned with the POISMIX_KERNELS environment variable
// ("scalar" or "avx2") or force_backend().
//
// Within one process the selected backend never changes, so repeated
// solves on identical data are bit-reproducible.

namespace poismix::kernels
{

/// Dot product x·y.
double dot(std::span<const double> x, std::span<const double> y);

/// y += a*x.
void axpy(double a, std::span<const double> x, std::span<double> y);

/// x *= a.
void scale(double a, std::span<double> x);

/// y = A*x for a CSR matrix given by (row_offsets, cols, vals).
void csr_spmv(std::span<const int> row_offsets, std::span<const int> cols,
              std::span<const double> vals, std::span<const double> x,
              std::span<double> y);

/// Name of the backend currently in use.
const char *active_backend();

/// Pin the backend ("scalar", "avx2" or "auto"). Throws if the requested
/// backend is not supported on this CPU. Intended for tests.
void force_backend(const char *name);

namespace detail
{
// Reference implementations; exposed so equivalence tests can compare the
// dispatched kernels against them directly.
double dot_scalar(std::span<const double> x, std::span<const double> y);
void axpy_scalar(double a, std::span<const double> x, std::span<double> y);
void scale_scalar(double a, std::span<double> x);
void csr_spmv_scalar(std::span<const int> row_offsets,
                     std::span<const int> cols, std::span<const double> vals,
                     std::span<const double> x, std::span<double> y);

bool avx2_supported();
double dot_avx2(std::span<const double> x, std::span<const double> y);
void axpy_avx2(double a, std::span<const double> x, std::span<double> y);
void scale_avx2(double a, std::span<double> x);
void csr_spmv_avx2(std::span<const int> row_offsets, std::span<const int> cols,
                   std::span<const double> vals, std::span<const double> x,
                   std::span<double> y);
} // namespace detail

} // namespace poismix::kernels

#endif
