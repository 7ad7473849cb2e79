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

#include "poismix/mesh.hpp"
#include "poismix/meshgen.hpp"

#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace poismix;
using namespace poismix::testing;

TEST_SUITE_BEGIN("mesh");

namespace
{

const char *unit_square_text = R"(MFEM mesh v1.0

# minimal well-formed input
dimension
2

elements
1
1 3 0 1 2 3

boundary
4
1 1 0 1
1 1 1 2
1 1 2 3
1 1 3 0

vertices
4
2
0 0
1 0
1 1
0 1
)";

Mesh parse_text(const std::string &text)
{
   std::istringstream in(text);
   return Mesh::parse(in);
}

// crossing-number point-in-element test (convex or not); test-side oracle
bool point_in_element(const Mesh &mesh, int e, Vec2 p)
{
   const Element &el = mesh.element(e);
   const int n = el.nvertices();
   bool inside = false;
   for (int a = 0; a < n; a++)
   {
      const Vertex &va = mesh.vertex(el.v[a]);
      const Vertex &vb = mesh.vertex(el.v[(a + 1) % n]);
      if ((va.y > p.y) != (vb.y > p.y))
      {
         const double xint =
            va.x + (p.y - va.y) / (vb.y - va.y) * (vb.x - va.x);
         if (p.x < xint) { inside = !inside; }
      }
   }
   return inside;
}

} // namespace

TEST_CASE("parse a minimal unit square file")
{
   const Mesh m = parse_text(unit_square_text);
   CHECK(m.num_elements() == 1);
   CHECK(m.num_vertices() == 4);
   CHECK(m.num_boundary_edges() == 4);
   CHECK(m.element(0).kind == ElementKind::Quadrilateral);
   CHECK(m.element(0).attribute == 1);
}

TEST_CASE("star mesh element count matches a record-counting oracle")
{
   // independent oracle: count the rows of the `elements` section directly
   std::ifstream in(data_path("star.mesh"));
   REQUIRE(in.good());
   std::string tok;
   while (in >> tok && tok != "elements") { }
   int declared = 0;
   in >> declared;
   int records = 0;
   std::string line;
   std::getline(in, line);
   while (std::getline(in, line) && !line.empty())
   {
      records++;
   }
   CHECK(records == declared);

   const Mesh m = Mesh::load(data_path("star.mesh"));
   CHECK(m.num_elements() == declared);
   CHECK(m.num_vertices() == 31);
   CHECK(m.num_boundary_edges() == 20);
}

TEST_CASE("rejected inputs name the offending line")
{
   // wrong version
   try
   {
      parse_text("MFEM mesh v0.9\n");
      FAIL("expected ParseError");
   }
   catch (const ParseError &err)
   {
      CHECK(err.line() == 1);
   }

   // unknown geometry code
   CHECK_THROWS_AS(parse_text("MFEM mesh v1.0\ndimension\n2\nelements\n1\n"
                              "1 7 0 1 2 3\n"), ParseError);
   // 3D mesh
   CHECK_THROWS_AS(parse_text("MFEM mesh v1.0\ndimension\n3\n"), ParseError);
   // vertex index out of range
   CHECK_THROWS_AS(parse_text("MFEM mesh v1.0\ndimension\n2\nelements\n1\n"
                              "1 3 0 1 2 9\nboundary\n0\nvertices\n4\n2\n"
                              "0 0\n1 0\n1 1\n0 1\n"), ParseError);
   // truncated file
   CHECK_THROWS_AS(parse_text("MFEM mesh v1.0\ndimension\n2\nelements\n2\n"
                              "1 3 0 1 2 3\n"), ParseError);
   // non-numeric token
   CHECK_THROWS_AS(parse_text("MFEM mesh v1.0\ndimension\ntwo\n"), ParseError);
}

TEST_CASE("invalid topology is rejected")
{
   // clockwise (inverted) element
   std::vector<Vertex> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
   std::vector<Element> cw = {{ElementKind::Quadrilateral, {0, 3, 2, 1}, 1}};
   std::vector<BoundaryEdge> b = {{{0, 3}, 1}, {{3, 2}, 1}, {{2, 1}, 1},
      {{1, 0}, 1}
   };
   CHECK_THROWS_WITH_AS(Mesh(v, cw, b), doctest::Contains("inverted"), Error);

   // repeated vertex
   std::vector<Element> rep = {{ElementKind::Quadrilateral, {0, 1, 1, 3}, 1}};
   CHECK_THROWS_AS(Mesh(v, rep, b), Error);

   // boundary edge that is no element edge
   std::vector<Element> ok = {{ElementKind::Quadrilateral, {0, 1, 2, 3}, 1}};
   std::vector<BoundaryEdge> bad_b = {{{0, 2}, 1}};
   CHECK_THROWS_AS(Mesh(v, ok, bad_b), Error);

   // missing boundary edge
   std::vector<BoundaryEdge> missing = {{{0, 1}, 1}, {{1, 2}, 1},
      {{2, 3}, 1}
   };
   CHECK_THROWS_WITH_AS(Mesh(v, ok, missing),
                        doctest::Contains("not listed"), Error);

   // non-finite coordinates
   std::vector<Vertex> nan_v = {{0, 0}, {1, 0},
      {std::numeric_limits<double>::quiet_NaN(), 1}, {0, 1}
   };
   std::vector<BoundaryEdge> full_b = {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1},
      {{3, 0}, 1}
   };
   CHECK_THROWS_AS(Mesh(nan_v, ok, full_b), Error);
}

TEST_CASE("uniform refinement combinatorics")
{
   const Mesh quad = make_unit_square_quad();
   const Mesh r1 = quad.uniform_refine();
   CHECK(r1.num_elements() == 4);
   CHECK(r1.num_vertices() == 9);
   CHECK(r1.num_boundary_edges() == 8);

   const Mesh r2 = r1.uniform_refine();
   CHECK(r2.num_elements() == 16);
   CHECK(r2.num_vertices() == 25);

   const Mesh tris = make_unit_square_triangles().uniform_refine();
   CHECK(tris.num_elements() == 8);
   CHECK(tris.num_vertices() == 9);
   CHECK(tris.num_boundary_edges() == 8);

   // child attributes inherited
   for (int e = 0; e < r1.num_elements(); e++)
   {
      CHECK(r1.element(e).attribute == 1);
   }
}

TEST_CASE("refinement preserves the total area")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   const double a0 = star.area();
   const Mesh r1 = star.uniform_refine();
   const Mesh r2 = r1.uniform_refine();
   CHECK(std::abs(r1.area() - a0) <= 1e-12 * a0);
   CHECK(std::abs(r2.area() - a0) <= 1e-12 * a0);

   const Mesh tris = make_unit_square_triangles();
   CHECK(std::abs(tris.uniform_refine().area() - 1.0) <= 1e-12);
}

TEST_CASE("mesh size h")
{
   const Mesh quad = make_unit_square_quad();
   CHECK(quad.h_max() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

   // halves under refinement for straight-edged elements
   const Mesh star = Mesh::load(data_path("star.mesh"));
   const double h0 = star.h_max();
   const double h1 = star.uniform_refine().h_max();
   CHECK(std::abs(h1 - 0.5 * h0) <= 1e-12 * h0);

   // 1x1 right triangle: diameter is the hypotenuse
   std::vector<Vertex> v = {{0, 0}, {1, 0}, {0, 1}};
   std::vector<Element> e = {{ElementKind::Triangle, {0, 1, 2, -1}, 1}};
   std::vector<BoundaryEdge> b = {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 0}, 1}};
   const Mesh tri(v, e, b);
   CHECK(tri.h_max() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("element geometry maps")
{
   const Mesh quad = make_unit_square_quad();
   const ElementGeometry g = quad.geometry(0);
   for (Vec2 p : {Vec2{0, 0}, Vec2{0.3, 0.7}, Vec2{1, 1}})
   {
      const auto J = g.jacobian(p);
      CHECK(J.j00 == doctest::Approx(1.0));
      CHECK(J.j11 == doctest::Approx(1.0));
      CHECK(J.j01 == doctest::Approx(0.0));
      CHECK(J.j10 == doctest::Approx(0.0));
      CHECK(J.det == doctest::Approx(1.0));
      const Vec2 x = g.map(p);
      CHECK(x.x == doctest::Approx(p.x));
      CHECK(x.y == doctest::Approx(p.y));
   }

   // square scaled by 2
   std::vector<Vertex> v = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
   std::vector<Element> e = {{ElementKind::Quadrilateral, {0, 1, 2, 3}, 1}};
   std::vector<BoundaryEdge> b = {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1},
      {{3, 0}, 1}
   };
   const Mesh scaled(v, e, b);
   CHECK(scaled.geometry(0).jacobian({0.5, 0.5}).det ==
         doctest::Approx(4.0).epsilon(1e-15));

   CHECK_THROWS_AS(quad.geometry(7), Error);
}

TEST_CASE("serialize/parse round trip is bit exact")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   std::ostringstream out;
   star.serialize(out);
   const Mesh again = parse_text(out.str());

   REQUIRE(again.num_vertices() == star.num_vertices());
   REQUIRE(again.num_elements() == star.num_elements());
   REQUIRE(again.num_boundary_edges() == star.num_boundary_edges());
   for (int i = 0; i < star.num_vertices(); i++)
   {
      CHECK(again.vertex(i).x == star.vertex(i).x);
      CHECK(again.vertex(i).y == star.vertex(i).y);
   }
   for (int e = 0; e < star.num_elements(); e++)
   {
      CHECK(again.element(e).kind == star.element(e).kind);
      CHECK(again.element(e).v == star.element(e).v);
      CHECK(again.element(e).attribute == star.element(e).attribute);
   }
   for (int b = 0; b < star.num_boundary_edges(); b++)
   {
      CHECK(again.boundary_edge(b).v == star.boundary_edge(b).v);
   }

   // and the shipped file is exactly what the generator produces
   std::ostringstream gen;
   make_star_mesh().serialize(gen);
   std::ifstream file(data_path("star.mesh"));
   std::stringstream shipped;
   shipped << file.rdbuf();
   CHECK(gen.str() == shipped.str());
}

TEST_CASE("boundary edges belong to elements that contain them")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   for (int b = 0; b < star.num_boundary_edges(); b++)
   {
      const BoundaryEdge &be = star.boundary_edge(b);
      bool found = false;
      for (int e = 0; e < star.num_elements() && !found; e++)
      {
         const Element &el = star.element(e);
         for (int le = 0; le < el.nedges(); le++)
         {
            const auto lv = local_edge_vertices(el.kind, le);
            const auto a = std::minmax(el.v[lv[0]], el.v[lv[1]]);
            if (a == std::minmax(be.v[0], be.v[1])) { found = true; break; }
         }
      }
      CHECK(found);
   }
}

TEST_CASE("element interiors are disjoint (sampled)")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   for (int e = 0; e < star.num_elements(); e++)
   {
      const Vec2 center = star.geometry(e).map(
      {star.element(e).kind == ElementKind::Triangle ? 1.0 / 3 : 0.5,
       star.element(e).kind == ElementKind::Triangle ? 1.0 / 3 : 0.5
      });
      for (int other = 0; other < star.num_elements(); other++)
      {
         if (other == e) { continue; }
         CHECK(!point_in_element(star, other, center));
      }
   }
}

TEST_SUITE_END();
