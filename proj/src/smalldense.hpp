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

// Dense LU with partial pivoting for the small local systems that come up
// in basis construction and elementwise projection. Row-major storage.

#ifndef POISMIX_SMALLDENSE_HPP
#define POISMIX_SMALLDENSE_HPP

#include "poismix/common.hpp"

#include <cmath>
#include <vector>

namespace poismix::smalldense
{

struct LU
{
   int n = 0;
   std::vector<double> a;   // factors, row-major
   std::vector<int> perm;
};

inline LU factor(std::vector<double> a, int n, double pivot_tol = 0.0)
{
   LU lu;
   lu.n = n;
   lu.a = std::move(a);
   lu.perm.resize(n);
   for (int i = 0; i < n; i++) { lu.perm[i] = i; }

   for (int k = 0; k < n; k++)
   {
      int piv = k;
      double best = std::abs(lu.a[k * n + k]);
      for (int i = k + 1; i < n; i++)
      {
         const double v = std::abs(lu.a[i * n + k]);
         if (v > best) { best = v; piv = i; }
      }
      if (!(best > pivot_tol))
      {
         throw SingularMatrixError("singular matrix (pivot " +
                                   std::to_string(best) + ")");
      }
      if (piv != k)
      {
         for (int j = 0; j < n; j++)
         {
            std::swap(lu.a[k * n + j], lu.a[piv * n + j]);
         }
         std::swap(lu.perm[k], lu.perm[piv]);
      }
      const double inv = 1.0 / lu.a[k * n + k];
      for (int i = k + 1; i < n; i++)
      {
         const double m = lu.a[i * n + k] * inv;
         lu.a[i * n + k] = m;
         for (int j = k + 1; j < n; j++)
         {
            lu.a[i * n + j] -= m * lu.a[k * n + j];
         }
      }
   }
   return lu;
}

inline void solve(const LU &lu, const double *b, double *x)
{
   const int n = lu.n;
   for (int i = 0; i < n; i++) { x[i] = b[lu.perm[i]]; }
   for (int i = 0; i < n; i++)
   {
      for (int j = 0; j < i; j++) { x[i] -= lu.a[i * n + j] * x[j]; }
   }
   for (int i = n - 1; i >= 0; i--)
   {
      for (int j = i + 1; j < n; j++) { x[i] -= lu.a[i * n + j] * x[j]; }
      x[i] /= lu.a[i * n + i];
   }
}

inline std::vector<double> solve(const LU &lu, const std::vector<double> &b)
{
   std::vector<double> x(lu.n);
   solve(lu, b.data(), x.data());
   return x;
}

// Inverse of `a` improved by Newton iterations (X <- X(2I - AX)); keeps the
// duality residual of basis construction near machine precision even for
// moderately conditioned functional matrices.
inline std::vector<double> refined_inverse(const std::vector<double> &a, int n,
                                           int refine_steps = 2)
{
   const LU lu = factor(a, n);
   std::vector<double> inv(n * n);
   std::vector<double> e(n, 0.0), col(n);
   for (int j = 0; j < n; j++)
   {
      e[j] = 1.0;
      solve(lu, e.data(), col.data());
      for (int i = 0; i < n; i++) { inv[i * n + j] = col[i]; }
      e[j] = 0.0;
   }

   std::vector<double> ax(n * n), x2(n * n);
   for (int step = 0; step < refine_steps; step++)
   {
      // ax = a * inv
      for (int i = 0; i < n; i++)
      {
         for (int j = 0; j < n; j++)
         {
            double s = 0.0;
            for (int k = 0; k < n; k++) { s += a[i * n + k] * inv[k * n + j]; }
            ax[i * n + j] = s;
         }
      }
      // x2 = inv * (2I - ax)
      for (int i = 0; i < n; i++)
      {
         for (int j = 0; j < n; j++)
         {
            double s = 0.0;
            for (int k = 0; k < n; k++)
            {
               const double m = (k == j ? 2.0 : 0.0) - ax[k * n + j];
               s += inv[i * n + k] * m;
            }
            x2[i * n + j] = s;
         }
      }
      inv.swap(x2);
   }
   return inv;
}

} // namespace poismix::smalldense

#endif
