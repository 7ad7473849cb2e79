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

#ifndef POISMIX_TESTS_TESTUTIL_HPP
#define POISMIX_TESTS_TESTUTIL_HPP

#include "poismix/fespace.hpp"
#include "poismix/meshgen.hpp"
#include "poismix/postprocess.hpp"

#include <random>
#include <string>
#include <vector>

namespace poismix::testing
{

inline std::string data_path(const std::string &name)
{
   return std::string(POISMIX_DATA_DIR) + "/" + name;
}

inline std::mt19937 fixed_rng(unsigned seed = 12345) { return std::mt19937(seed); }

inline std::vector<double> random_vector(int n, std::mt19937 &rng,
                                         double scale = 1.0)
{
   std::uniform_real_distribution<double> dist(-scale, scale);
   std::vector<double> v(n);
   for (double &x : v) { x = dist(rng); }
   return v;
}

// A = R^T R + 0.5 n I: symmetric positive definite with modest condition
// number (keeps CG's finite-termination property observable in floating
// point).
inline std::vector<double> random_spd(int n, std::mt19937 &rng)
{
   const std::vector<double> r = random_vector(n * n, rng);
   std::vector<double> a(n * n, 0.0);
   for (int i = 0; i < n; i++)
   {
      for (int j = 0; j < n; j++)
      {
         double s = 0.0;
         for (int k = 0; k < n; k++) { s += r[k * n + i] * r[k * n + j]; }
         a[i * n + j] = s;
      }
      a[i * n + i] += 0.5 * n;
   }
   return a;
}

// Two unit quads side by side: vertices 0..5, shared edge (1,4).
inline Mesh make_two_quads()
{
   std::vector<Vertex> v = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
   std::vector<Element> e = {{ElementKind::Quadrilateral, {0, 1, 4, 3}, 1},
      {ElementKind::Quadrilateral, {1, 2, 5, 4}, 1}
   };
   std::vector<BoundaryEdge> b = {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 5}, 1},
      {{5, 4}, 1}, {{4, 3}, 1}, {{3, 0}, 1}
   };
   return Mesh(std::move(v), std::move(e), std::move(b));
}

// One quad and one triangle sharing the edge (1,3).
inline Mesh make_quad_tri()
{
   std::vector<Vertex> v = {{0, 0}, {1, 0}, {2, 0.5}, {1, 1}, {0, 1}};
   std::vector<Element> e = {{ElementKind::Quadrilateral, {0, 1, 3, 4}, 1},
      {ElementKind::Triangle, {1, 2, 3, -1}, 1}
   };
   std::vector<BoundaryEdge> b = {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1},
      {{3, 4}, 1}, {{4, 0}, 1}
   };
   return Mesh(std::move(v), std::move(e), std::move(b));
}

inline Mesh refined(Mesh m, int times)
{
   for (int r = 0; r < times; r++) { m = m.uniform_refine(); }
   return m;
}

// Nodal interpolation of a scalar field into an H1/L2 space.
inline GridFunction interpolate_scalar(const FESpace &space,
                                       const ScalarField &f)
{
   GridFunction gf(space);
   std::vector<int> ids;
   std::vector<double> signs;
   for (int e = 0; e < space.mesh().num_elements(); e++)
   {
      const ReferenceElement &re =
         space.ref_elem(space.mesh().element(e).kind);
      const ElementGeometry geom = space.mesh().geometry(e);
      space.element_dofs(e, ids, signs);
      for (int a = 0; a < re.ndofs(); a++)
      {
         gf.coeffs[ids[a]] = f(geom.map(re.nodes()[a])) / signs[a];
      }
   }
   return gf;
}

// RT interpolation of a physical vector field on meshes with affine
// element maps (constant Jacobian): pulls the field back through the
// inverse Piola transform and applies the moment functionals.
inline GridFunction interpolate_rt(const FESpace &space, const VectorField &u)
{
   GridFunction gf(space);
   std::vector<int> ids;
   std::vector<double> signs;
   for (int e = 0; e < space.mesh().num_elements(); e++)
   {
      const ReferenceElement &re =
         space.ref_elem(space.mesh().element(e).kind);
      const ElementGeometry geom = space.mesh().geometry(e);
      space.element_dofs(e, ids, signs);
      const auto J = geom.checked_jacobian({0.25, 0.25});
      VectorField ref_field = [&](Vec2 rp) -> Vec2
      {
         const Vec2 up = u(geom.map(rp));
         // det J * J^{-1} * u
         return {J.j11 * up.x - J.j01 * up.y, -J.j10 * up.x + J.j00 * up.y};
      };
      for (int a = 0; a < re.ndofs(); a++)
      {
         gf.coeffs[ids[a]] = re.apply_functional(a, ref_field) / signs[a];
      }
   }
   return gf;
}

} // namespace poismix::testing

#endif
