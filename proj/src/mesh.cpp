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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace poismix
{

std::array<int, 2> local_edge_vertices(ElementKind kind, int le)
{
   const int n = kind == ElementKind::Triangle ? 3 : 4;
   return {le, (le + 1) % n};
}

// ---------------------------------------------------------------------------
// ElementGeometry

ElementGeometry::ElementGeometry(ElementKind kind,
                                 const std::array<Vec2, 4> &corners)
   : kind_(kind), corners_(corners) { }

Vec2 ElementGeometry::map(Vec2 r) const
{
   const auto &c = corners_;
   if (kind_ == ElementKind::Triangle)
   {
      const double l0 = 1.0 - r.x - r.y;
      return {l0 * c[0].x + r.x * c[1].x + r.y * c[2].x,
              l0 * c[0].y + r.x * c[1].y + r.y * c[2].y};
   }
   const double a = (1 - r.x) * (1 - r.y), b = r.x * (1 - r.y);
   const double d = r.x * r.y, e = (1 - r.x) * r.y;
   return {a * c[0].x + b * c[1].x + d * c[2].x + e * c[3].x,
           a * c[0].y + b * c[1].y + d * c[2].y + e * c[3].y};
}

ElementGeometry::Jacobian ElementGeometry::jacobian(Vec2 r) const
{
   const auto &c = corners_;
   Jacobian J;
   if (kind_ == ElementKind::Triangle)
   {
      J.j00 = c[1].x - c[0].x;
      J.j01 = c[2].x - c[0].x;
      J.j10 = c[1].y - c[0].y;
      J.j11 = c[2].y - c[0].y;
   }
   else
   {
      // d/dxi and d/deta of the bilinear map
      J.j00 = (1 - r.y) * (c[1].x - c[0].x) + r.y * (c[2].x - c[3].x);
      J.j01 = (1 - r.x) * (c[3].x - c[0].x) + r.x * (c[2].x - c[1].x);
      J.j10 = (1 - r.y) * (c[1].y - c[0].y) + r.y * (c[2].y - c[3].y);
      J.j11 = (1 - r.x) * (c[3].y - c[0].y) + r.x * (c[2].y - c[1].y);
   }
   J.det = J.j00 * J.j11 - J.j01 * J.j10;
   return J;
}

ElementGeometry::Jacobian ElementGeometry::checked_jacobian(Vec2 r) const
{
   Jacobian J = jacobian(r);
   if (!(J.det > 0.0))
   {
      throw Error("inverted element: det J = " + std::to_string(J.det));
   }
   return J;
}

// ---------------------------------------------------------------------------
// Mesh

Mesh::Mesh(std::vector<Vertex> vertices, std::vector<Element> elements,
           std::vector<BoundaryEdge> boundary)
   : vertices_(std::move(vertices)), elements_(std::move(elements)),
     boundary_(std::move(boundary))
{
   build_topology();
   validate();
}

void Mesh::build_topology()
{
   edges_.clear();
   element_edges_.assign(elements_.size(), {-1, -1, -1, -1});

   std::map<std::pair<int, int>, int> edge_ids;
   auto edge_id = [&](int a, int b)
   {
      const auto key = std::minmax(a, b);
      auto it = edge_ids.find(key);
      if (it != edge_ids.end()) { return it->second; }
      const int id = (int)edges_.size();
      edges_.push_back({key.first, key.second});
      edge_ids.emplace(key, id);
      return id;
   };

   for (int e = 0; e < num_elements(); e++)
   {
      const Element &el = elements_[e];
      for (int le = 0; le < el.nedges(); le++)
      {
         const auto lv = local_edge_vertices(el.kind, le);
         element_edges_[e][le] = edge_id(el.v[lv[0]], el.v[lv[1]]);
      }
   }

   edge_boundary_index_.assign(edges_.size(), -1);
   for (int b = 0; b < num_boundary_edges(); b++)
   {
      const auto key = std::minmax(boundary_[b].v[0], boundary_[b].v[1]);
      auto it = edge_ids.find(key);
      if (it == edge_ids.end())
      {
         throw Error("boundary edge " + std::to_string(b) +
                     " is not an edge of any element");
      }
      edge_boundary_index_[it->second] = b;
   }

   vertex_on_boundary_.assign(vertices_.size(), false);
   for (const BoundaryEdge &b : boundary_)
   {
      vertex_on_boundary_[b.v[0]] = true;
      vertex_on_boundary_[b.v[1]] = true;
   }
}

void Mesh::validate() const
{
   const int nv = num_vertices();
   for (int i = 0; i < nv; i++)
   {
      if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y))
      {
         throw Error("vertex " + std::to_string(i) +
                     " has non-finite coordinates");
      }
   }

   for (int e = 0; e < num_elements(); e++)
   {
      const Element &el = elements_[e];
      const int n = el.nvertices();
      for (int a = 0; a < n; a++)
      {
         if (el.v[a] < 0 || el.v[a] >= nv)
         {
            throw Error("element " + std::to_string(e) +
                        ": vertex index out of range");
         }
         for (int b = a + 1; b < n; b++)
         {
            if (el.v[a] == el.v[b])
            {
               throw Error("element " + std::to_string(e) +
                           ": repeated vertex");
            }
         }
      }
      // det J of a bilinear quad map is bilinear in (xi,eta), so corner
      // positivity implies positivity everywhere; triangles are affine.
      const ElementGeometry geom = geometry(e);
      const Vec2 tri_pts[3] = {{0, 0}, {1, 0}, {0, 1}};
      const Vec2 quad_pts[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      const int np = n == 3 ? 3 : 4;
      const Vec2 *pts = n == 3 ? tri_pts : quad_pts;
      for (int p = 0; p < np; p++)
      {
         if (!(geom.jacobian(pts[p]).det > 0.0))
         {
            throw Error("element " + std::to_string(e) +
                        " is inverted (vertices not counterclockwise)");
         }
      }
   }

   for (int b = 0; b < num_boundary_edges(); b++)
   {
      const auto &be = boundary_[b];
      if (be.v[0] < 0 || be.v[0] >= nv || be.v[1] < 0 || be.v[1] >= nv)
      {
         throw Error("boundary edge " + std::to_string(b) +
                     ": vertex index out of range");
      }
   }

   // Each mesh edge must be shared by 1 or 2 elements; the count-1 edges are
   // exactly the listed boundary edges.
   std::vector<int> incidence(edges_.size(), 0);
   for (int e = 0; e < num_elements(); e++)
   {
      for (int le = 0; le < elements_[e].nedges(); le++)
      {
         incidence[element_edges_[e][le]]++;
      }
   }
   for (std::size_t i = 0; i < edges_.size(); i++)
   {
      if (incidence[i] > 2)
      {
         throw Error("edge shared by more than two elements");
      }
      const bool listed = edge_boundary_index_[i] >= 0;
      if (incidence[i] == 1 && !listed)
      {
         throw Error("edge (" + std::to_string(edges_[i].v0) + "," +
                     std::to_string(edges_[i].v1) +
                     ") lies on the boundary but is not listed");
      }
      if (incidence[i] == 2 && listed)
      {
         throw Error("interior edge listed as boundary");
      }
   }
}

int Mesh::element_edge(int e, int le) const { return element_edges_[e][le]; }

bool Mesh::element_edge_aligned(int e, int le) const
{
   const Element &el = elements_[e];
   const auto lv = local_edge_vertices(el.kind, le);
   return el.v[lv[0]] < el.v[lv[1]];
}

ElementGeometry Mesh::geometry(int e) const
{
   if (e < 0 || e >= num_elements())
   {
      throw Error("geometry: element index out of range");
   }
   const Element &el = elements_[e];
   std::array<Vec2, 4> c{};
   for (int i = 0; i < el.nvertices(); i++)
   {
      c[i] = {vertices_[el.v[i]].x, vertices_[el.v[i]].y};
   }
   return ElementGeometry(el.kind, c);
}

double Mesh::h_max() const
{
   if (elements_.empty()) { throw Error("h_max: empty mesh"); }
   double h = 0.0;
   for (const Element &el : elements_)
   {
      const int n = el.nvertices();
      for (int a = 0; a < n; a++)
      {
         for (int b = a + 1; b < n; b++)
         {
            const Vertex &p = vertices_[el.v[a]];
            const Vertex &q = vertices_[el.v[b]];
            h = std::max(h, std::hypot(p.x - q.x, p.y - q.y));
         }
      }
   }
   return h;
}

double Mesh::area() const
{
   double total = 0.0;
   for (int e = 0; e < num_elements(); e++)
   {
      const ElementGeometry geom = geometry(e);
      const QuadRule &rule =
         rule_for_geometry(ref_geometry(elements_[e].kind), 2);
      for (int q = 0; q < rule.size(); q++)
      {
         total += rule.weights[q] * geom.jacobian(rule.points[q]).det;
      }
   }
   return total;
}

Mesh Mesh::uniform_refine() const
{
   std::vector<Vertex> verts = vertices_;

   // One midpoint per edge, numbered in global edge order after the
   // original vertices; quad centroids follow in element order.
   const int mid_offset = num_vertices();
   for (const EdgeInfo &ed : edges_)
   {
      verts.push_back({0.5 * (vertices_[ed.v0].x + vertices_[ed.v1].x),
                       0.5 * (vertices_[ed.v0].y + vertices_[ed.v1].y)});
   }
   std::vector<int> centroid_id(elements_.size(), -1);
   for (int e = 0; e < num_elements(); e++)
   {
      const Element &el = elements_[e];
      if (el.kind == ElementKind::Quadrilateral)
      {
         centroid_id[e] = (int)verts.size();
         Vertex c{0.0, 0.0};
         for (int i = 0; i < 4; i++)
         {
            c.x += 0.25 * vertices_[el.v[i]].x;
            c.y += 0.25 * vertices_[el.v[i]].y;
         }
         verts.push_back(c);
      }
   }

   std::vector<Element> elems;
   elems.reserve(4 * elements_.size());
   for (int e = 0; e < num_elements(); e++)
   {
      const Element &el = elements_[e];
      if (el.kind == ElementKind::Triangle)
      {
         const int m01 = mid_offset + element_edges_[e][0];
         const int m12 = mid_offset + element_edges_[e][1];
         const int m20 = mid_offset + element_edges_[e][2];
         elems.push_back({el.kind, {el.v[0], m01, m20, -1}, el.attribute});
         elems.push_back({el.kind, {el.v[1], m12, m01, -1}, el.attribute});
         elems.push_back({el.kind, {el.v[2], m20, m12, -1}, el.attribute});
         elems.push_back({el.kind, {m01, m12, m20, -1}, el.attribute});
      }
      else
      {
         const int m01 = mid_offset + element_edges_[e][0];
         const int m12 = mid_offset + element_edges_[e][1];
         const int m23 = mid_offset + element_edges_[e][2];
         const int m30 = mid_offset + element_edges_[e][3];
         const int cc = centroid_id[e];
         elems.push_back({el.kind, {el.v[0], m01, cc, m30}, el.attribute});
         elems.push_back({el.kind, {m01, el.v[1], m12, cc}, el.attribute});
         elems.push_back({el.kind, {cc, m12, el.v[2], m23}, el.attribute});
         elems.push_back({el.kind, {m30, cc, m23, el.v[3]}, el.attribute});
      }
   }

   std::map<std::pair<int, int>, int> edge_lookup;
   for (std::size_t i = 0; i < edges_.size(); i++)
   {
      edge_lookup.emplace(std::make_pair(edges_[i].v0, edges_[i].v1), (int)i);
   }
   std::vector<BoundaryEdge> bdr;
   bdr.reserve(2 * boundary_.size());
   for (const BoundaryEdge &b : boundary_)
   {
      const auto key = std::minmax(b.v[0], b.v[1]);
      const int mid = mid_offset + edge_lookup.at(key);
      bdr.push_back({{b.v[0], mid}, b.attribute});
      bdr.push_back({{mid, b.v[1]}, b.attribute});
   }

   return Mesh(std::move(verts), std::move(elems), std::move(bdr));
}

// ---------------------------------------------------------------------------
// MFEM v1.0 format

namespace
{

// Tokenizer that strips '#' comments and tracks line numbers.
class Tokenizer
{
public:
   explicit Tokenizer(std::istream &in) : in_(in) { }

   // First non-empty line, verbatim (for the format header).
   std::string header_line()
   {
      std::string line;
      while (std::getline(in_, line))
      {
         line_++;
         if (const auto pos = line.find('#'); pos != std::string::npos)
         {
            line = line.substr(0, pos);
         }
         while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
         {
            line.pop_back();
         }
         if (!line.empty()) { return line; }
      }
      throw ParseError(line_, "unexpected end of file");
   }

   std::string token()
   {
      refill();
      if (pos_ >= tokens_.size())
      {
         throw ParseError(line_, "unexpected end of file");
      }
      return tokens_[pos_++];
   }

   int integer(const char *what)
   {
      const std::string t = token();
      try
      {
         std::size_t used = 0;
         const int v = std::stoi(t, &used);
         if (used != t.size()) { throw std::invalid_argument(t); }
         return v;
      }
      catch (const std::exception &)
      {
         throw ParseError(line_, std::string("expected integer ") + what +
                          ", got '" + t + "'");
      }
   }

   double real(const char *what)
   {
      const std::string t = token();
      try
      {
         std::size_t used = 0;
         const double v = std::stod(t, &used);
         if (used != t.size()) { throw std::invalid_argument(t); }
         return v;
      }
      catch (const std::exception &)
      {
         throw ParseError(line_, std::string("expected number ") + what +
                          ", got '" + t + "'");
      }
   }

   void expect_keyword(const char *kw)
   {
      const std::string t = token();
      if (t != kw)
      {
         throw ParseError(line_, std::string("expected '") + kw + "', got '" +
                          t + "'");
      }
   }

   int line() const { return line_; }

private:
   void refill()
   {
      while (pos_ >= tokens_.size())
      {
         std::string line;
         if (!std::getline(in_, line)) { return; }
         line_++;
         if (const auto pos = line.find('#'); pos != std::string::npos)
         {
            line = line.substr(0, pos);
         }
         tokens_.clear();
         pos_ = 0;
         std::istringstream ss(line);
         std::string t;
         while (ss >> t) { tokens_.push_back(t); }
      }
   }

   std::istream &in_;
   std::vector<std::string> tokens_;
   std::size_t pos_ = 0;
   int line_ = 0;
};

} // namespace

Mesh Mesh::parse(std::istream &in)
{
   Tokenizer tk(in);

   const std::string header = tk.header_line();
   if (header != "MFEM mesh v1.0")
   {
      throw ParseError(tk.line(), "bad header '" + header +
                       "' (expected 'MFEM mesh v1.0')");
   }

   tk.expect_keyword("dimension");
   const int dim = tk.integer("dimension");
   if (dim != 2)
   {
      throw ParseError(tk.line(), "unsupported dimension " +
                       std::to_string(dim) + " (only 2D meshes)");
   }

   tk.expect_keyword("elements");
   const int ne = tk.integer("element count");
   if (ne < 0) { throw ParseError(tk.line(), "negative element count"); }
   std::vector<Element> elements;
   std::vector<int> element_lines;
   elements.reserve(ne);
   for (int e = 0; e < ne; e++)
   {
      Element el;
      el.attribute = tk.integer("element attribute");
      element_lines.push_back(tk.line());
      const int geom = tk.integer("element geometry code");
      if (geom == 2) { el.kind = ElementKind::Triangle; }
      else if (geom == 3) { el.kind = ElementKind::Quadrilateral; }
      else
      {
         throw ParseError(tk.line(), "unknown element geometry code " +
                          std::to_string(geom));
      }
      el.v = {-1, -1, -1, -1};
      for (int i = 0; i < el.nvertices(); i++)
      {
         el.v[i] = tk.integer("element vertex index");
      }
      elements.push_back(el);
   }

   tk.expect_keyword("boundary");
   const int nb = tk.integer("boundary count");
   if (nb < 0) { throw ParseError(tk.line(), "negative boundary count"); }
   std::vector<BoundaryEdge> boundary;
   std::vector<int> boundary_lines;
   boundary.reserve(nb);
   for (int b = 0; b < nb; b++)
   {
      BoundaryEdge be;
      be.attribute = tk.integer("boundary attribute");
      boundary_lines.push_back(tk.line());
      const int geom = tk.integer("boundary geometry code");
      if (geom != 1)
      {
         throw ParseError(tk.line(), "boundary geometry code " +
                          std::to_string(geom) + " (expected 1 = segment)");
      }
      be.v[0] = tk.integer("boundary vertex index");
      be.v[1] = tk.integer("boundary vertex index");
      boundary.push_back(be);
   }

   tk.expect_keyword("vertices");
   const int nv = tk.integer("vertex count");
   if (nv < 0) { throw ParseError(tk.line(), "negative vertex count"); }
   const int vdim = tk.integer("vertex dimension");
   if (vdim != 2)
   {
      throw ParseError(tk.line(), "vertex dimension " + std::to_string(vdim) +
                       " (only 2 supported)");
   }
   std::vector<Vertex> vertices(nv);
   for (int i = 0; i < nv; i++)
   {
      vertices[i].x = tk.real("x coordinate");
      vertices[i].y = tk.real("y coordinate");
   }

   // index range checks here so the error can name the offending record's
   // line (vertices come last in this format)
   for (int e = 0; e < ne; e++)
   {
      for (int i = 0; i < elements[e].nvertices(); i++)
      {
         if (elements[e].v[i] < 0 || elements[e].v[i] >= nv)
         {
            throw ParseError(element_lines[e],
                             "element vertex index out of range");
         }
      }
   }
   for (int b = 0; b < nb; b++)
   {
      for (int i = 0; i < 2; i++)
      {
         if (boundary[b].v[i] < 0 || boundary[b].v[i] >= nv)
         {
            throw ParseError(boundary_lines[b],
                             "boundary vertex index out of range");
         }
      }
   }

   const int parse_line = tk.line();
   try
   {
      return Mesh(std::move(vertices), std::move(elements),
                  std::move(boundary));
   }
   catch (const Error &err)
   {
      throw ParseError(parse_line, err.what());
   }
}

Mesh Mesh::load(const std::string &path)
{
   std::ifstream in(path);
   if (!in)
   {
      throw Error("cannot open mesh file '" + path + "'");
   }
   return parse(in);
}

void Mesh::serialize(std::ostream &out) const
{
   out << "MFEM mesh v1.0\n\n";
   out << "dimension\n2\n\n";

   out << "elements\n" << num_elements() << "\n";
   for (const Element &el : elements_)
   {
      out << el.attribute << ' '
          << (el.kind == ElementKind::Triangle ? 2 : 3);
      for (int i = 0; i < el.nvertices(); i++) { out << ' ' << el.v[i]; }
      out << '\n';
   }

   out << "\nboundary\n" << num_boundary_edges() << "\n";
   for (const BoundaryEdge &b : boundary_)
   {
      out << b.attribute << " 1 " << b.v[0] << ' ' << b.v[1] << '\n';
   }

   out << "\nvertices\n" << num_vertices() << "\n2\n";
   char buf[64];
   for (const Vertex &v : vertices_)
   {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", v.x, v.y);
      out << buf << '\n';
   }
}

} // namespace poismix
