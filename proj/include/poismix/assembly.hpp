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

#ifndef POISMIX_ASSEMBLY_HPP
#define POISMIX_ASSEMBLY_HPP

#include "poismix/fespace.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

namespace poismix
{

/// Compressed sparse row matrix. Built from triplets; duplicate entries are
/// summed during finalization, in a fixed order, so assembly is
/// bit-reproducible.
class SparseMatrix
{
public:
   struct Triplet
   {
      int row, col;
      double value;
   };

   SparseMatrix() = default;
   static SparseMatrix from_triplets(int nrows, int ncols,
                                     std::vector<Triplet> triplets);

   int rows() const { return nrows_; }
   int cols() const { return ncols_; }
   int nnz() const { return (int)values_.size(); }

   std::span<const int> row_offsets() const { return row_offsets_; }
   std::span<const int> col_indices() const { return col_indices_; }
   std::span<const double> values() const { return values_; }

   /// Stored value at (i,j); 0 for entries outside the sparsity pattern.
   double operator()(int i, int j) const;

   void mult(std::span<const double> x, std::span<double> y) const;
   void mult_transpose(std::span<const double> x, std::span<double> y) const;

   SparseMatrix transpose() const;
   std::vector<double> dense() const; // row-major nrows x ncols

   double max_abs() const;
   /// max |A - A^T| entry; matrix must be square.
   double symmetry_error() const;

   /// Zero all entries of row i (pattern kept).
   void zero_row(int i);
   /// Zero all stored entries in column j.
   void zero_col(int j);
   /// Set diagonal entry (must exist in the pattern).
   void set_diag(int i, double v);

private:
   int nrows_ = 0, ncols_ = 0;
   std::vector<int> row_offsets_;
   std::vector<int> col_indices_;
   std::vector<double> values_;
};

/// MatrixMarket coordinate format export.
void write_matrix_market(std::ostream &out, const SparseMatrix &A);

/// Coefficients and data of the baseline problem pair; the defaults make
/// the primal and the mixed formulation discretize the same equation.
struct ProblemSpec
{
   ScalarField k_coeff;      // permeability in the mixed operator
   VectorField f;            // mixed momentum source
   ScalarField g;            // mixed mass source (-div u = g convention)
   ScalarField p0;           // boundary pressure (natural condition)
   ScalarField rhs_lagrange; // -lap p = rhs

   /// k=1, f=0, g=-1, p0=0, rhs=1: both methods solve -lap p = 1, p=0 on
   /// the boundary, with u = -grad p.
   static ProblemSpec poisson_unit();

   /// Manufactured case on the unit square: p = sin(pi x) sin(pi y),
   /// rhs = 2 pi^2 sin(pi x) sin(pi y), g = -rhs.
   static ProblemSpec manufactured();
};

/// Stiffness matrix A[i,j] = int coeff grad(phi_i).grad(phi_j) on an H1
/// space; symmetric by construction.
SparseMatrix assemble_diffusion(const FESpace &space, const ScalarField &coeff);

/// Vector mass M[i,j] = int coeff phi_i.phi_j with Piola-mapped RT bases.
SparseMatrix assemble_vector_mass(const FESpace &space,
                                  const ScalarField &coeff);

/// Divergence coupling with the negated sign convention:
/// B[l,i] = -int psi_l div(phi_i), shape (L2 dofs) x (RT dofs).
SparseMatrix assemble_divergence(const FESpace &rt_space,
                                 const FESpace &l2_space);

/// Load vector b[i] = int field phi_i (H1 or L2 space).
std::vector<double> assemble_load(const FESpace &space,
                                  const ScalarField &field);

/// Boundary-pressure term of the mixed right hand side:
/// rhs_u[i] = -int_Gamma p0 (phi_i . n) over boundary edges.
std::vector<double> assemble_boundary_flux(const FESpace &rt_space,
                                           const ScalarField &p0);

/// Symmetric elimination of essential dofs: zero rows and columns, unit
/// diagonal, b[dof] = 0. Idempotent.
void apply_essential_bc(SparseMatrix &A, std::vector<double> &b,
                        std::span<const int> dofs);

/// The saddle-point operator [[M, B^T],[B, 0]] with right hand side
/// (rhs_u, rhs_p).
struct BlockSystem
{
   SparseMatrix M;  // n_u x n_u
   SparseMatrix B;  // n_p x n_u
   SparseMatrix Bt; // n_u x n_p
   std::vector<double> rhs;
   std::array<int, 3> offsets; // {0, n_u, n_u + n_p}

   int size() const { return offsets[2]; }
   void apply(std::span<const double> x, std::span<double> y) const;
};

BlockSystem build_block_system(SparseMatrix M, SparseMatrix B,
                               std::vector<double> rhs_u,
                               std::vector<double> rhs_p);

} // namespace poismix

#endif
