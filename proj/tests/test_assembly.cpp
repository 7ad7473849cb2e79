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

#include "poismix/assembly.hpp"
#include "poismix/meshgen.hpp"
#include "poismix/solvers.hpp"

#include "support/dense_eig.hpp"
#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

using namespace poismix;
using namespace poismix::testing;

TEST_SUITE_BEGIN("assembly");

namespace
{

const ScalarField one = [](Vec2) { return 1.0; };
const ScalarField zero = [](Vec2) { return 0.0; };

} // namespace

TEST_CASE("Q1 stiffness matrix on the unit square")
{
   const Mesh mesh = make_unit_square_quad();
   const FESpace h1(mesh, Family::H1Lagrange, 1);
   const SparseMatrix A = assemble_diffusion(h1, one);

   // classic bilinear element matrix: 2/3 diagonal, -1/6 edge neighbors,
   // -1/3 across the diagonal
   for (int i = 0; i < 4; i++)
   {
      CHECK(std::abs(A(i, i) - 2.0 / 3.0) <= 1e-13);
      CHECK(std::abs(A(i, (i + 1) % 4) + 1.0 / 6.0) <= 1e-13);
      CHECK(std::abs(A(i, (i + 2) % 4) + 1.0 / 3.0) <= 1e-13);
   }

   // constants in the kernel: zero row sums
   for (int i = 0; i < 4; i++)
   {
      double sum = 0.0;
      for (int j = 0; j < 4; j++) { sum += A(i, j); }
      CHECK(std::abs(sum) <= 1e-14);
   }

   CHECK(assemble_diffusion(h1, zero).max_abs() == 0.0);
   CHECK_THROWS_AS(assemble_diffusion(FESpace(mesh, Family::L2Disc, 1), one),
                   Error);
}

TEST_CASE("vector mass matrix")
{
   const Mesh mesh = make_unit_square_quad();
   const FESpace rt(mesh, Family::RT, 0);
   const SparseMatrix M = assemble_vector_mass(rt, one);

   CHECK(M.symmetry_error() == 0.0);
   CHECK(assemble_vector_mass(rt, zero).max_abs() == 0.0);
   CHECK_THROWS_AS(assemble_vector_mass(FESpace(mesh, Family::H1Lagrange, 1),
                                        one), Error);

   // RT0 unit square: 1/3 on the diagonal
   for (int i = 0; i < 4; i++)
   {
      CHECK(std::abs(M(i, i) - 1.0 / 3.0) <= 1e-13);
   }

   // full matrix against an independent dense quadrature oracle at
   // accuracy 2k+3
   const ReferenceElement &re = rt.ref_elem(ElementKind::Quadrilateral);
   const ElementGeometry geom = mesh.geometry(0);
   const QuadRule &rule = rule_for_geometry(RefGeometry::Quad, 3);
   std::vector<int> ids;
   std::vector<double> signs;
   rt.element_dofs(0, ids, signs);
   std::vector<double> oracle(16, 0.0);
   std::vector<Vec2> vals(4);
   std::vector<double> divs(4);
   for (int q = 0; q < rule.size(); q++)
   {
      const auto J = geom.checked_jacobian(rule.points[q]);
      re.eval_vector(rule.points[q], vals, divs);
      for (int a = 0; a < 4; a++)
      {
         const Vec2 va = piola_value(J, vals[a]);
         for (int b = 0; b < 4; b++)
         {
            const Vec2 vb = piola_value(J, vals[b]);
            oracle[a * 4 + b] += rule.weights[q] * J.det * signs[a] *
                                 signs[b] * dot(va, vb);
         }
      }
   }
   for (int a = 0; a < 4; a++)
   {
      for (int b = 0; b < 4; b++)
      {
         CHECK(std::abs(M(ids[a], ids[b]) - oracle[a * 4 + b]) <= 1e-13);
      }
   }
}

TEST_CASE("divergence coupling")
{
   const Mesh mesh = make_unit_square_quad();
   const FESpace rt(mesh, Family::RT, 0);
   const FESpace l2(mesh, Family::L2Disc, 0);
   const SparseMatrix B = assemble_divergence(rt, l2);

   REQUIRE(B.rows() == 1);
   REQUIRE(B.cols() == 4);

   // every entry is -1 times the net outward flux of the global basis
   // function (divergence theorem); fluxes are +-1 for RT0
   for (int i = 0; i < 4; i++)
   {
      GridFunction basis(rt);
      basis.coeffs[i] = 1.0;
      // net outward flux by boundary quadrature
      double flux = 0.0;
      const Vec2 corners[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      const QuadRule gl = gauss_legendre_1d(4);
      for (int le = 0; le < 4; le++)
      {
         const Vec2 a = corners[le], b = corners[(le + 1) % 4];
         for (int q = 0; q < gl.size(); q++)
         {
            const double t = 0.5 * (gl.points[q].x + 1.0);
            const Vec2 rp = {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
            const Vec2 tangent = {b.x - a.x, b.y - a.y};
            const double ds = norm(tangent);
            const Vec2 n = {tangent.y / ds, -tangent.x / ds};
            flux += 0.5 * gl.weights[q] * ds *
                    dot(basis.eval_vector(0, rp), n);
         }
      }
      CHECK(std::abs(std::abs(B(0, i)) - 1.0) <= 1e-13);
      CHECK(std::abs(B(0, i) + flux) <= 1e-13);
   }

   // a divergence-free interpolant is in the kernel of B
   const Mesh fine = refined(make_unit_square_quad(), 2);
   const FESpace rtf(fine, Family::RT, 1);
   const FESpace l2f(fine, Family::L2Disc, 1);
   const SparseMatrix Bf = assemble_divergence(rtf, l2f);
   const GridFunction div_free =
      interpolate_rt(rtf, [](Vec2) { return Vec2{1.0, 0.0}; });
   std::vector<double> out(Bf.rows());
   Bf.mult(div_free.coeffs, out);
   for (double v : out) { CHECK(std::abs(v) <= 1e-13); }

   // dimensions
   CHECK(Bf.rows() == l2f.ndofs());
   CHECK(Bf.cols() == rtf.ndofs());

   const Mesh other = make_unit_square_quad();
   CHECK_THROWS_AS(assemble_divergence(rt, FESpace(other, Family::L2Disc, 0)),
                   Error);
   CHECK_THROWS_AS(assemble_divergence(rt, FESpace(mesh, Family::L2Disc, 1)),
                   Error);
}

TEST_CASE("load vectors")
{
   const Mesh mesh = make_unit_square_quad();
   const FESpace h1(mesh, Family::H1Lagrange, 1);

   const auto b = assemble_load(h1, one);
   REQUIRE(b.size() == 4);
   for (double v : b) { CHECK(std::abs(v - 0.25) <= 1e-13); }

   for (double v : assemble_load(h1, zero)) { CHECK(v == 0.0); }

   // g = -1 on a discontinuous piecewise-constant space: -area(element)
   const Mesh star = Mesh::load(data_path("star.mesh"));
   const FESpace l2(star, Family::L2Disc, 0);
   const auto g = assemble_load(l2, [](Vec2) { return -1.0; });
   for (int e = 0; e < star.num_elements(); e++)
   {
      const ElementGeometry geom = star.geometry(e);
      const QuadRule &rule = rule_for_geometry(RefGeometry::Quad, 2);
      double area = 0.0;
      for (int q = 0; q < rule.size(); q++)
      {
         area += rule.weights[q] * geom.checked_jacobian(rule.points[q]).det;
      }
      CHECK(std::abs(g[e] + area) <= 1e-13);
   }

   CHECK_THROWS_AS(assemble_load(FESpace(mesh, Family::RT, 0), one), Error);
}

TEST_CASE("boundary flux vector")
{
   const Mesh mesh = make_unit_square_quad();
   const FESpace rt(mesh, Family::RT, 0);

   for (double v : assemble_boundary_flux(rt, zero)) { CHECK(v == 0.0); }

   // p0 = 1: every (boundary) edge dof receives +-1 = edge length x unit flux
   const auto rhs = assemble_boundary_flux(rt, one);
   REQUIRE(rhs.size() == 4);
   for (double v : rhs) { CHECK(std::abs(std::abs(v) - 1.0) <= 1e-13); }

   // interior dofs stay zero
   const Mesh fine = mesh.uniform_refine();
   const FESpace rtf(fine, Family::RT, 0);
   const auto rhs_f = assemble_boundary_flux(rtf, one);
   for (int ed = 0; ed < fine.num_edges(); ed++)
   {
      if (!fine.edge_on_boundary(ed))
      {
         CHECK(rhs_f[ed] == 0.0);
      }
   }

   CHECK_THROWS_AS(assemble_boundary_flux(FESpace(mesh, Family::L2Disc, 0),
                                          one), Error);
}

TEST_CASE("essential boundary elimination")
{
   // constrain everything: identity system
   const Mesh mesh = make_unit_square_quad();
   const FESpace h1(mesh, Family::H1Lagrange, 1);
   SparseMatrix A = assemble_diffusion(h1, one);
   std::vector<double> b = assemble_load(h1, one);
   apply_essential_bc(A, b, std::vector<int>{0, 1, 2, 3});
   for (int i = 0; i < 4; i++)
   {
      CHECK(b[i] == 0.0);
      for (int j = 0; j < 4; j++)
      {
         CHECK(A(i, j) == (i == j ? 1.0 : 0.0));
      }
   }
   CHECK(A.symmetry_error() == 0.0);

   // 2-dof toy system, constrain dof 0: reduced solve gives 3/2
   SparseMatrix T = SparseMatrix::from_triplets(2, 2,
   {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
   std::vector<double> tb = {3.0, 3.0};
   const std::vector<int> fixed = {0, 0}; // duplicates tolerated
   apply_essential_bc(T, tb, fixed);
   apply_essential_bc(T, tb, fixed); // idempotent
   const auto x = dense_solve(T.dense(), tb);
   CHECK(std::abs(x[0] - 0.0) <= 1e-14);
   CHECK(std::abs(x[1] - 1.5) <= 1e-14);
}

TEST_CASE("eliminated stiffness matrix is positive definite")
{
   // dense eigenvalue oracle on systems up to a few hundred dofs
   for (const Mesh &mesh : {refined(make_unit_square_quad(), 2),
                            Mesh::load(data_path("star.mesh")).uniform_refine()
                           })
   {
      const FESpace h1(mesh, Family::H1Lagrange, 1);
      SparseMatrix A = assemble_diffusion(h1, one);
      std::vector<double> b(h1.ndofs(), 0.0);
      apply_essential_bc(A, b, h1.essential_boundary_dofs());
      REQUIRE(h1.ndofs() <= 256);
      const auto eig = symmetric_eigenvalues(A.dense(), h1.ndofs());
      CHECK(eig.front() > 0.0);
   }
}

TEST_CASE("block system")
{
   const Mesh mesh = refined(make_unit_square_quad(), 1);
   const FESpace rt(mesh, Family::RT, 0);
   const FESpace l2(mesh, Family::L2Disc, 0);
   SparseMatrix M = assemble_vector_mass(rt, one);
   SparseMatrix B = assemble_divergence(rt, l2);
   std::vector<double> rhs_u(rt.ndofs(), 0.0);
   std::vector<double> rhs_p = assemble_load(l2, [](Vec2) { return -1.0; });

   const BlockSystem D = build_block_system(M, B, rhs_u, rhs_p);
   CHECK(D.size() == rt.ndofs() + l2.ndofs());
   CHECK(D.offsets[1] == rt.ndofs());

   // <Dx,y> = <x,Dy> for random pairs
   auto rng = fixed_rng(5);
   for (int trial = 0; trial < 10; trial++)
   {
      const auto x = random_vector(D.size(), rng);
      const auto y = random_vector(D.size(), rng);
      std::vector<double> Dx(D.size()), Dy(D.size());
      D.apply(x, Dx);
      D.apply(y, Dy);
      double xy = 0.0, yx = 0.0;
      for (int i = 0; i < D.size(); i++)
      {
         xy += Dx[i] * y[i];
         yx += x[i] * Dy[i];
      }
      CHECK(std::abs(xy - yx) <= 1e-12 * std::max(1.0, std::abs(xy)));
   }

   // zero rhs -> zero solution
   std::vector<double> x0;
   const BlockSystem D0 = build_block_system(M, B,
                                             std::vector<double>(rt.ndofs(), 0.0),
                                             std::vector<double>(l2.ndofs(), 0.0));
   const SolveReport rep = minres_solve(LinearOperator::from(D0), D0.rhs, x0,
   {});
   CHECK(rep.converged);
   CHECK(rep.iterations == 0);
   for (double v : x0) { CHECK(v == 0.0); }

   // dimension mismatch
   CHECK_THROWS_AS(build_block_system(M, B, std::vector<double>(3, 0.0),
                                      rhs_p), Error);
}

TEST_CASE("assembly is bit-reproducible")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   const FESpace h1(star, Family::H1Lagrange, 2);
   const SparseMatrix A1 = assemble_diffusion(h1, one);
   const SparseMatrix A2 = assemble_diffusion(h1, one);
   REQUIRE(A1.nnz() == A2.nnz());
   CHECK(std::memcmp(A1.values().data(), A2.values().data(),
                     A1.nnz() * sizeof(double)) == 0);

   const FESpace rt(star, Family::RT, 1);
   const SparseMatrix M1 = assemble_vector_mass(rt, one);
   const SparseMatrix M2 = assemble_vector_mass(rt, one);
   CHECK(std::memcmp(M1.values().data(), M2.values().data(),
                     M1.nnz() * sizeof(double)) == 0);
}

TEST_CASE("Galerkin consistency of the assembled stiffness")
{
   // for discrete p, (A c)_i equals the directly integrated bilinear form
   const Mesh mesh = refined(make_unit_square_quad(), 1);
   const FESpace h1(mesh, Family::H1Lagrange, 2);
   const SparseMatrix A = assemble_diffusion(h1, one);
   auto rng = fixed_rng(11);
   const auto c = random_vector(h1.ndofs(), rng);
   std::vector<double> Ac(h1.ndofs());
   A.mult(c, Ac);

   // independent integration at a higher quadrature accuracy
   std::vector<double> direct(h1.ndofs(), 0.0);
   std::vector<int> ids;
   std::vector<double> signs, vals;
   std::vector<Vec2> grads;
   const int accuracy = required_order(2) + 4;
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const ReferenceElement &re = h1.ref_elem(mesh.element(e).kind);
      const ElementGeometry geom = mesh.geometry(e);
      const QuadRule &rule = rule_for_geometry(re.geometry(), accuracy);
      const int n = re.ndofs();
      h1.element_dofs(e, ids, signs);
      vals.resize(n);
      grads.resize(n);
      for (int q = 0; q < rule.size(); q++)
      {
         const auto J = geom.checked_jacobian(rule.points[q]);
         re.eval_gradients(rule.points[q], vals, grads);
         const double w = rule.weights[q] * J.det;
         const double inv = 1.0 / J.det;
         for (int a = 0; a < n; a++)
         {
            grads[a] = {inv * (J.j11 * grads[a].x - J.j10 * grads[a].y),
                        inv * (-J.j01 * grads[a].x + J.j00 * grads[a].y)
                       };
         }
         Vec2 gp = {0, 0};
         for (int a = 0; a < n; a++)
         {
            gp = gp + (c[ids[a]] * signs[a]) * grads[a];
         }
         for (int a = 0; a < n; a++)
         {
            direct[ids[a]] += signs[a] * w * dot(grads[a], gp);
         }
      }
   }
   for (int i = 0; i < h1.ndofs(); i++)
   {
      CHECK(std::abs(Ac[i] - direct[i]) <= 1e-12);
   }
}

TEST_CASE("MatrixMarket export round trips")
{
   const Mesh mesh = make_unit_square_quad();
   const FESpace h1(mesh, Family::H1Lagrange, 1);
   const SparseMatrix A = assemble_diffusion(h1, one);

   std::ostringstream out;
   write_matrix_market(out, A);
   std::istringstream in(out.str());

   std::string header;
   std::getline(in, header);
   CHECK(header == "%%MatrixMarket matrix coordinate real general");
   int rows, cols, nnz;
   in >> rows >> cols >> nnz;
   CHECK(rows == 4);
   CHECK(cols == 4);
   CHECK(nnz == A.nnz());
   for (int t = 0; t < nnz; t++)
   {
      int i, j;
      double v;
      in >> i >> j >> v;
      CHECK(v == A(i - 1, j - 1));
   }
}

TEST_SUITE_END();
