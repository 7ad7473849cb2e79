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

// AVX2/FMA kernel variants. Compiled with per-function target attributes so
// the translation unit itself needs no special flags; the dispatcher only
// calls these after checking CPU support.

#include "poismix/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#define POISMIX_AVX2 __attribute__((target("avx2,fma")))

namespace poismix::kernels::detail
{

bool avx2_supported()
{
   return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

POISMIX_AVX2
double dot_avx2(std::span<const double> x, std::span<const double> y)
{
   const std::size_t n = x.size();
   const std::size_t n4 = n & ~std::size_t(3);
   __m256d acc = _mm256_setzero_pd();
   for (std::size_t i = 0; i < n4; i += 4)
   {
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i]),
                            acc);
   }
   __m128d lo = _mm256_castpd256_pd128(acc);
   __m128d hi = _mm256_extractf128_pd(acc, 1);
   lo = _mm_add_pd(lo, hi);
   double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
   for (std::size_t i = n4; i < n; i++)
   {
      s += x[i] * y[i];
   }
   return s;
}

POISMIX_AVX2
void axpy_avx2(double a, std::span<const double> x, std::span<double> y)
{
   const std::size_t n = x.size();
   const std::size_t n4 = n & ~std::size_t(3);
   const __m256d va = _mm256_set1_pd(a);
   for (std::size_t i = 0; i < n4; i += 4)
   {
      __m256d vy = _mm256_loadu_pd(&y[i]);
      vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(&x[i]), vy);
      _mm256_storeu_pd(&y[i], vy);
   }
   for (std::size_t i = n4; i < n; i++)
   {
      y[i] += a * x[i];
   }
}

POISMIX_AVX2
void scale_avx2(double a, std::span<double> x)
{
   const std::size_t n = x.size();
   const std::size_t n4 = n & ~std::size_t(3);
   const __m256d va = _mm256_set1_pd(a);
   for (std::size_t i = 0; i < n4; i += 4)
   {
      _mm256_storeu_pd(&x[i], _mm256_mul_pd(va, _mm256_loadu_pd(&x[i])));
   }
   for (std::size_t i = n4; i < n; i++)
   {
      x[i] *= a;
   }
}

POISMIX_AVX2
void csr_spmv_avx2(std::span<const int> row_offsets, std::span<const int> cols,
                   std::span<const double> vals, std::span<const double> x,
                   std::span<double> y)
{
   const std::size_t nrows = row_offsets.size() - 1;
   for (std::size_t r = 0; r < nrows; r++)
   {
      const int begin = row_offsets[r];
      const int end = row_offsets[r + 1];
      const int len4 = (end - begin) & ~3;
      __m256d acc = _mm256_setzero_pd();
      int j = begin;
      for (; j < begin + len4; j += 4)
      {
         __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i *>(
                                          &cols[j]));
         __m256d xv = _mm256_i32gather_pd(x.data(), idx, 8);
         acc = _mm256_fmadd_pd(_mm256_loadu_pd(&vals[j]), xv, acc);
      }
      __m128d lo = _mm256_castpd256_pd128(acc);
      __m128d hi = _mm256_extractf128_pd(acc, 1);
      lo = _mm_add_pd(lo, hi);
      double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
      for (; j < end; j++)
      {
         s += vals[j] * x[cols[j]];
      }
      y[r] = s;
   }
}

} // namespace poismix::kernels::detail

#else // non-x86 build: no AVX2 variant, dispatcher falls back to scalar

namespace poismix::kernels::detail
{

bool avx2_supported() { return false; }

double dot_avx2(std::span<const double> x, std::span<const double> y)
{
   return dot_scalar(x, y);
}

void axpy_avx2(double a, std::span<const double> x, std::span<double> y)
{
   axpy_scalar(a, x, y);
}

void scale_avx2(double a, std::span<double> x) { scale_scalar(a, x); }

void csr_spmv_avx2(std::span<const int> row_offsets, std::span<const int> cols,
                   std::span<const double> vals, std::span<const double> x,
                   std::span<double> y)
{
   csr_spmv_scalar(row_offsets, cols, vals, x, y);
}

} // namespace poismix::kernels::detail

#endif
