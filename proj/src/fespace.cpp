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

#include "poismix/fespace.hpp"

#include <algorithm>

namespace poismix
{

FESpace::FESpace(const Mesh &mesh, Family family, int order, int vdim)
   : mesh_(&mesh), family_(family), order_(order), vdim_(vdim)
{
   if (vdim < 1) { throw Error("FESpace: vdim must be >= 1"); }
   // Instantiating the reference elements validates family/order/geometry.
   bool has_tri = false, has_quad = false;
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      (mesh.element(e).kind == ElementKind::Triangle ? has_tri : has_quad) =
         true;
   }
   if (has_tri) { ReferenceElement::get(family, order, RefGeometry::Triangle); }
   if (has_quad) { ReferenceElement::get(family, order, RefGeometry::Quad); }
   number_dofs();
}

const ReferenceElement &FESpace::ref_elem(ElementKind kind) const
{
   return ReferenceElement::get(family_, order_, ref_geometry(kind));
}

int FESpace::element_ndofs(int e) const
{
   return ref_elem(mesh_->element(e).kind).ndofs();
}

void FESpace::number_dofs()
{
   const Mesh &mesh = *mesh_;
   const int k = order_;

   int vertex_dofs = 0;
   switch (family_)
   {
      case Family::H1Lagrange:
         vertex_dofs = mesh.num_vertices();
         edge_dofs_per_edge_ = k - 1;
         break;
      case Family::L2Disc:
         edge_dofs_per_edge_ = 0;
         break;
      case Family::RT:
         edge_dofs_per_edge_ = k + 1;
         break;
   }
   edge_offset_ = vertex_dofs;
   interior_offset_ = edge_offset_ + mesh.num_edges() * edge_dofs_per_edge_;

   elem_interior_start_.resize(mesh.num_elements());
   int interior_count = 0;
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      elem_interior_start_[e] = interior_count;
      const ReferenceElement &re = ref_elem(mesh.element(e).kind);
      int n_int = 0;
      for (const DofDescriptor &d : re.dofs())
      {
         if (d.kind == DofDescriptor::Kind::Interior) { n_int++; }
      }
      interior_count += n_int;
   }
   scalar_ndofs_ = interior_offset_ + interior_count;

   // Flatten the local->global map once; assembly and evaluation then only
   // index into it.
   elem_dof_start_.resize(mesh.num_elements() + 1);
   elem_dof_start_[0] = 0;
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      elem_dof_start_[e + 1] = elem_dof_start_[e] + element_ndofs(e);
   }
   dof_ids_.resize(elem_dof_start_.back());
   dof_signs_.assign(elem_dof_start_.back(), 1.0);

   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const Element &el = mesh.element(e);
      const ReferenceElement &re = ref_elem(el.kind);
      int *ids = dof_ids_.data() + elem_dof_start_[e];
      double *signs = dof_signs_.data() + elem_dof_start_[e];
      for (int l = 0; l < re.ndofs(); l++)
      {
         const DofDescriptor &d = re.dofs()[l];
         switch (d.kind)
         {
            case DofDescriptor::Kind::Vertex:
               ids[l] = el.v[d.entity];
               break;
            case DofDescriptor::Kind::Edge:
            {
               const int edge = mesh.element_edge(e, d.entity);
               const bool aligned = mesh.element_edge_aligned(e, d.entity);
               if (family_ == Family::H1Lagrange)
               {
                  // node position measured along the global direction
                  const int t = aligned ? d.index : (k - 2 - d.index);
                  ids[l] = edge_offset_ + edge * edge_dofs_per_edge_ + t;
               }
               else
               {
                  // RT flux moments against Gauss cardinals: traversing the
                  // edge backwards permutes the cardinals (j -> k-j for the
                  // k+1 symmetric nodes) and flips the normal
                  const int slot = aligned ? d.index : (k - d.index);
                  ids[l] = edge_offset_ + edge * edge_dofs_per_edge_ + slot;
                  if (!aligned) { signs[l] = -1.0; }
               }
               break;
            }
            case DofDescriptor::Kind::Interior:
               ids[l] = interior_offset_ + elem_interior_start_[e] + d.index;
               break;
         }
      }
   }
}

void FESpace::element_dofs(int e, std::vector<int> &ids,
                           std::vector<double> &signs) const
{
   const int begin = elem_dof_start_[e];
   const int end = elem_dof_start_[e + 1];
   ids.assign(dof_ids_.begin() + begin, dof_ids_.begin() + end);
   signs.assign(dof_signs_.begin() + begin, dof_signs_.begin() + end);
}

std::vector<int> FESpace::essential_boundary_dofs() const
{
   if (family_ != Family::H1Lagrange)
   {
      throw Error("essential_boundary_dofs: boundary conditions are natural "
                  "for L2/RT spaces");
   }
   std::vector<int> dofs;
   for (int v = 0; v < mesh_->num_vertices(); v++)
   {
      if (mesh_->vertex_on_boundary(v)) { dofs.push_back(v); }
   }
   for (int ed = 0; ed < mesh_->num_edges(); ed++)
   {
      if (!mesh_->edge_on_boundary(ed)) { continue; }
      for (int t = 0; t < edge_dofs_per_edge_; t++)
      {
         dofs.push_back(edge_offset_ + ed * edge_dofs_per_edge_ + t);
      }
   }
   std::sort(dofs.begin(), dofs.end());
   dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
   return dofs;
}

} // namespace poismix
