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

#include "poismix/meshgen.hpp"

#include <cmath>

namespace poismix
{

Mesh make_unit_square_quad()
{
   std::vector<Vertex> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
   std::vector<Element> e = {{ElementKind::Quadrilateral, {0, 1, 2, 3}, 1}};
   std::vector<BoundaryEdge> b = {{{0, 1}, 1}, {{1, 2}, 2},
      {{2, 3}, 3}, {{3, 0}, 4}
   };
   return Mesh(std::move(v), std::move(e), std::move(b));
}

Mesh make_unit_square_triangles()
{
   std::vector<Vertex> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
   std::vector<Element> e = {{ElementKind::Triangle, {0, 1, 2, -1}, 1},
      {ElementKind::Triangle, {0, 2, 3, -1}, 1}
   };
   std::vector<BoundaryEdge> b = {{{0, 1}, 1}, {{1, 2}, 2},
      {{2, 3}, 3}, {{3, 0}, 4}
   };
   return Mesh(std::move(v), std::move(e), std::move(b));
}

Mesh make_star_mesh()
{
   const double deg = M_PI / 180.0;
   const double tip_radius = 2.0 * std::cos(36.0 * deg);

   // Vertex 0 is the center; 1..5 the concave decagon corners on the unit
   // circle at angles 72k; 6..10 the star tips at 36+72k. Each coarse
   // rhombus is (center, corner_k, tip_k, corner_{k+1}).
   std::vector<Vertex> v;
   v.push_back({0.0, 0.0});
   for (int k = 0; k < 5; k++)
   {
      const double a = 72.0 * k * deg;
      v.push_back({std::cos(a), std::sin(a)});
   }
   for (int k = 0; k < 5; k++)
   {
      const double a = (36.0 + 72.0 * k) * deg;
      v.push_back({tip_radius * std::cos(a), tip_radius * std::sin(a)});
   }

   std::vector<Element> e;
   std::vector<BoundaryEdge> b;
   for (int k = 0; k < 5; k++)
   {
      const int c0 = 1 + k;
      const int c1 = 1 + (k + 1) % 5;
      const int tip = 6 + k;
      e.push_back({ElementKind::Quadrilateral, {0, c0, tip, c1}, 1});
      b.push_back({{c0, tip}, 1});
      b.push_back({{tip, c1}, 1});
   }

   return Mesh(std::move(v), std::move(e), std::move(b)).uniform_refine();
}

} // namespace poismix
