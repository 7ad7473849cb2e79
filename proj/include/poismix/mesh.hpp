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

#ifndef POISMIX_MESH_HPP
#define POISMIX_MESH_HPP

#include "poismix/common.hpp"
#include "poismix/quadrature.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace poismix
{

enum class ElementKind { Triangle, Quadrilateral };

inline RefGeometry ref_geometry(ElementKind kind)
{
   return kind == ElementKind::Triangle ? RefGeometry::Triangle
          : RefGeometry::Quad;
}

struct Vertex
{
   double x = 0.0;
   double y = 0.0;
};

struct Element
{
   ElementKind kind;
   std::array<int, 4> v;   // v[3] unused for triangles
   int attribute = 1;

   int nvertices() const { return kind == ElementKind::Triangle ? 3 : 4; }
   int nedges() const { return nvertices(); }
};

struct BoundaryEdge
{
   std::array<int, 2> v;
   int attribute = 1;
};

/// Undirected mesh edge; stored with v0 < v1. This ordering defines the
/// global edge direction used for DOF orientation.
struct EdgeInfo
{
   int v0, v1;
};

/// Geometry map of a single element: reference coordinates to physical,
/// with Jacobian data. Affine for triangles, bilinear for quadrilaterals.
class ElementGeometry
{
public:
   struct Jacobian
   {
      // row-major d(x,y)/d(xi,eta)
      double j00, j01, j10, j11;
      double det;
   };

   ElementGeometry(ElementKind kind, const std::array<Vec2, 4> &corners);

   Vec2 map(Vec2 ref) const;
   Jacobian jacobian(Vec2 ref) const;

   /// Jacobian with a positivity check; throws on det <= 0 (inverted
   /// element).
   Jacobian checked_jacobian(Vec2 ref) const;

   ElementKind kind() const { return kind_; }
   const std::array<Vec2, 4> &corners() const { return corners_; }

private:
   ElementKind kind_;
   std::array<Vec2, 4> corners_;
};

/// Conforming 2D mesh of triangles and/or quadrilaterals with boundary
/// edges, as read from the MFEM v1.0 text format. Immutable after
/// construction; refinement produces a new mesh.
class Mesh
{
public:
   Mesh(std::vector<Vertex> vertices, std::vector<Element> elements,
        std::vector<BoundaryEdge> boundary);

   /// Parse the MFEM v1.0 text format (2D subset). Throws ParseError with
   /// a line number on malformed input.
   static Mesh parse(std::istream &in);
   static Mesh load(const std::string &path);

   /// Write the mesh in MFEM v1.0 format. Coordinates are printed with
   /// enough digits that parse(serialize(m)) reproduces m bit-exactly.
   void serialize(std::ostream &out) const;

   int num_vertices() const { return (int)vertices_.size(); }
   int num_elements() const { return (int)elements_.size(); }
   int num_boundary_edges() const { return (int)boundary_.size(); }
   int num_edges() const { return (int)edges_.size(); }

   const Vertex &vertex(int i) const { return vertices_[i]; }
   const Element &element(int i) const { return elements_[i]; }
   const BoundaryEdge &boundary_edge(int i) const { return boundary_[i]; }
   const EdgeInfo &edge(int i) const { return edges_[i]; }

   /// Global edge id of local edge `le` of element `e`.
   int element_edge(int e, int le) const;
   /// True if the element's local edge direction (counterclockwise
   /// traversal) coincides with the global low-id -> high-id direction.
   bool element_edge_aligned(int e, int le) const;

   bool edge_on_boundary(int edge_id) const
   {
      return edge_boundary_index_[edge_id] >= 0;
   }
   bool vertex_on_boundary(int vertex_id) const
   {
      return vertex_on_boundary_[vertex_id];
   }

   ElementGeometry geometry(int e) const;

   /// Largest element diameter (max pairwise vertex distance within an
   /// element). Note this is the true diameter; see the CSV docs for how
   /// it relates to singular-value based size indicators.
   double h_max() const;

   /// One level of uniform refinement: quads split into 4 quads via edge
   /// midpoints and the vertex-mean centroid, triangles into 4 via edge
   /// midpoints; boundary edges split in two. Attributes are inherited.
   Mesh uniform_refine() const;

   /// Total area from the Jacobian integral over all elements.
   double area() const;

private:
   std::vector<Vertex> vertices_;
   std::vector<Element> elements_;
   std::vector<BoundaryEdge> boundary_;

   // derived topology
   std::vector<EdgeInfo> edges_;
   std::vector<std::array<int, 4>> element_edges_;
   std::vector<int> edge_boundary_index_; // -1 if interior
   std::vector<bool> vertex_on_boundary_;

   void build_topology();
   void validate() const;
};

/// Local edge (a,b) vertex slots of the counterclockwise traversal.
std::array<int, 2> local_edge_vertices(ElementKind kind, int le);

} // namespace poismix

#endif
