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

// Cyclic Jacobi eigenvalue iteration for symmetric dense matrices.
// Test-side oracle, independent of the solver module.

#ifndef POISMIX_TESTS_DENSE_EIG_HPP
#define POISMIX_TESTS_DENSE_EIG_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace poismix::testing
{

// Eigenvalues of a symmetric matrix (row-major n x n), ascending.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n)
{
   auto at = [&](int i, int j) -> double & { return a[i * n + j]; };

   for (int sweep = 0; sweep < 100; sweep++)
   {
      double off = 0.0;
      for (int i = 0; i < n; i++)
      {
         for (int j = i + 1; j < n; j++) { off += at(i, j) * at(i, j); }
      }
      if (off < 1e-30) { break; }

      for (int p = 0; p < n - 1; p++)
      {
         for (int q = p + 1; q < n; q++)
         {
            const double apq = at(p, q);
            if (std::abs(apq) < 1e-300) { continue; }
            const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
            const double t = (theta >= 0 ? 1.0 : -1.0) /
                             (std::abs(theta) +
                              std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;
            for (int k = 0; k < n; k++)
            {
               const double akp = at(k, p), akq = at(k, q);
               at(k, p) = c * akp - s * akq;
               at(k, q) = s * akp + c * akq;
            }
            for (int k = 0; k < n; k++)
            {
               const double apk = at(p, k), aqk = at(q, k);
               at(p, k) = c * apk - s * aqk;
               at(q, k) = s * apk + c * aqk;
            }
         }
      }
   }

   std::vector<double> eig(n);
   for (int i = 0; i < n; i++) { eig[i] = at(i, i); }
   std::sort(eig.begin(), eig.end());
   return eig;
}

} // namespace poismix::testing

#endif
