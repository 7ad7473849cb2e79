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

// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against.

#include "poismix/kernels.hpp"

namespace poismix::kernels::detail
{

double dot_scalar(std::span<const double> x, std::span<const double> y)
{
   double s = 0.0;
   for (std::size_t i = 0; i < x.size(); i++)
   {
      s += x[i] * y[i];
   }
   return s;
}

void axpy_scalar(double a, std::span<const double> x, std::span<double> y)
{
   for (std::size_t i = 0; i < x.size(); i++)
   {
      y[i] += a * x[i];
   }
}

void scale_scalar(double a, std::span<double> x)
{
   for (std::size_t i = 0; i < x.size(); i++)
   {
      x[i] *= a;
   }
}

void csr_spmv_scalar(std::span<const int> row_offsets,
                     std::span<const int> cols, std::span<const double> vals,
                     std::span<const double> x, std::span<double> y)
{
   const std::size_t nrows = row_offsets.size() - 1;
   for (std::size_t r = 0; r < nrows; r++)
   {
      double s = 0.0;
      for (int j = row_offsets[r]; j < row_offsets[r + 1]; j++)
      {
         s += vals[j] * x[cols[j]];
      }
      y[r] = s;
   }
}

} // namespace poismix::kernels::detail
