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

#ifndef POISMIX_SOLVERS_HPP
#define POISMIX_SOLVERS_HPP

#include "poismix/assembly.hpp"

#include <functional>
#include <span>
#include <vector>

namespace poismix
{

struct SolverConfig
{
   double rtol = 1e-6;
   double atol = 1e-10;
   int max_iter = 10000;
};

enum class StopReason { RelTol, AbsTol, MaxIter, Breakdown };

/// Convergence means final_residual <= max(rtol*||b||_2, atol), with the
/// true (unpreconditioned) residual 2-norm.
struct SolveReport
{
   bool converged = false;
   int iterations = 0;
   double final_residual = 0.0;
   StopReason criterion = StopReason::MaxIter;
};

struct LinearOperator
{
   int size = 0;
   std::function<void(std::span<const double>, std::span<double>)> apply;

   static LinearOperator from(const SparseMatrix &A);
   static LinearOperator from(const BlockSystem &D);
};

/// Conjugate gradients for symmetric positive definite operators. x is the
/// initial guess (an empty or wrongly sized x starts from zero, the
/// default in all pipeline runs) and receives the solution. Deterministic;
/// non-convergence is reported, not thrown.
SolveReport cg_solve(const LinearOperator &A, std::span<const double> b,
                     std::vector<double> &x, const SolverConfig &cfg);

/// MINRES for symmetric (possibly indefinite) operators; same initial
/// guess and reporting conventions as cg_solve.
SolveReport minres_solve(const LinearOperator &A, std::span<const double> b,
                         std::vector<double> &x, const SolverConfig &cfg);

/// Gaussian elimination with partial pivoting on a dense row-major matrix;
/// verification oracle for the iterative solvers. Throws
/// SingularMatrixError when a pivot falls below 1e-14 * max|A|.
std::vector<double> dense_solve(std::vector<double> A, std::vector<double> b);

} // namespace poismix

#endif
