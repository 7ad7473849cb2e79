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

#include "poismix/kernels.hpp"

#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace poismix;
using namespace poismix::testing;

TEST_SUITE_BEGIN("kernels");

namespace
{

// |a-b| <= tol * scale
void check_close(double a, double b, double scale)
{
   CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(scale)));
}

struct BackendGuard
{
   ~BackendGuard() { kernels::force_backend("auto"); }
};

} // namespace

TEST_CASE("dispatched kernels match the scalar reference")
{
   BackendGuard guard;
   auto rng = fixed_rng();
   // lengths straddle the SIMD width, including remainders
   for (int n : {1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 64, 1001})
   {
      const auto x = random_vector(n, rng);
      const auto y = random_vector(n, rng);

      double abs_sum = 0.0;
      for (int i = 0; i < n; i++) { abs_sum += std::abs(x[i] * y[i]); }

      kernels::force_backend("auto");
      const double d_auto = kernels::dot(x, y);
      const double d_ref = kernels::detail::dot_scalar(x, y);
      check_close(d_auto, d_ref, abs_sum);

      auto y1 = y, y2 = y;
      kernels::axpy(2.5, x, y1);
      kernels::detail::axpy_scalar(2.5, x, y2);
      for (int i = 0; i < n; i++) { check_close(y1[i], y2[i], y2[i]); }

      auto x1 = x, x2 = x;
      kernels::scale(-0.75, x1);
      kernels::detail::scale_scalar(-0.75, x2);
      for (int i = 0; i < n; i++) { CHECK(x1[i] == x2[i]); }
   }
}

TEST_CASE("csr_spmv agrees with a naive triple loop")
{
   BackendGuard guard;
   auto rng = fixed_rng(99);
   const int n = 37;

   // random sparse pattern with ragged row lengths
   std::vector<int> offsets = {0};
   std::vector<int> cols;
   std::vector<double> vals;
   std::uniform_int_distribution<int> len_dist(0, 9);
   std::uniform_int_distribution<int> col_dist(0, n - 1);
   std::uniform_real_distribution<double> val_dist(-1.0, 1.0);
   for (int r = 0; r < n; r++)
   {
      const int len = len_dist(rng);
      for (int k = 0; k < len; k++)
      {
         cols.push_back(col_dist(rng));
         vals.push_back(val_dist(rng));
      }
      offsets.push_back((int)cols.size());
   }
   const auto x = random_vector(n, rng);

   std::vector<double> expected(n, 0.0);
   for (int r = 0; r < n; r++)
   {
      for (int t = offsets[r]; t < offsets[r + 1]; t++)
      {
         expected[r] += vals[t] * x[cols[t]];
      }
   }

   std::vector<double> y(n, -1.0);
   kernels::csr_spmv(offsets, cols, vals, x, y);
   for (int r = 0; r < n; r++) { check_close(y[r], expected[r], 10.0); }

   std::vector<double> y_scalar(n, -1.0);
   kernels::detail::csr_spmv_scalar(offsets, cols, vals, x, y_scalar);
   for (int r = 0; r < n; r++) { check_close(y[r], y_scalar[r], 10.0); }
}

TEST_CASE("backend selection")
{
   BackendGuard guard;

   kernels::force_backend("scalar");
   CHECK(std::strcmp(kernels::active_backend(), "scalar") == 0);

   if (kernels::detail::avx2_supported())
   {
      kernels::force_backend("avx2");
      CHECK(std::strcmp(kernels::active_backend(), "avx2") == 0);
   }

   kernels::force_backend("auto");
   CHECK_THROWS_AS(kernels::force_backend("sse9"), Error);
}

TEST_CASE("repeated calls are bit-reproducible")
{
   BackendGuard guard;
   auto rng = fixed_rng(7);
   const auto x = random_vector(1003, rng);
   const auto y = random_vector(1003, rng);
   const double d1 = kernels::dot(x, y);
   const double d2 = kernels::dot(x, y);
   CHECK(std::memcmp(&d1, &d2, sizeof(double)) == 0);
}

TEST_SUITE_END();
