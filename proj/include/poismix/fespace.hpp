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

#ifndef POISMIX_FESPACE_HPP
#define POISMIX_FESPACE_HPP

#include "poismix/elements.hpp"
#include "poismix/mesh.hpp"

#include <span>
#include <vector>

namespace poismix
{

// Global finite element space over a mesh.
//
// DOF numbering is deterministic: vertex dofs first (vertex order), then
// edge dofs in global edge order, then element-interior dofs in element
// order. Shared H1 edge dofs are stored along the global low-id -> high-id
// edge direction; RT edge dofs are normal-flux moments in that direction,
// and an element whose local edge direction disagrees sees moment j as
// global moment k-j with a flipped sign (the Gauss cardinal weights are
// symmetric under the parameter reversal).
class FESpace
{
public:
   FESpace(const Mesh &mesh, Family family, int order, int vdim = 1);
   // the space keeps a reference to the mesh; temporaries would dangle
   FESpace(Mesh &&, Family, int, int = 1) = delete;

   const Mesh &mesh() const { return *mesh_; }
   Family family() const { return family_; }
   int order() const { return order_; }
   int vdim() const { return vdim_; }

   int ndofs() const { return vdim_ * scalar_ndofs_; }
   int scalar_ndofs() const { return scalar_ndofs_; }

   const ReferenceElement &ref_elem(ElementKind kind) const;
   int element_ndofs(int e) const;

   /// Global scalar dof ids and orientation signs for element e, aligned
   /// with the reference element's local dof order.
   void element_dofs(int e, std::vector<int> &ids,
                     std::vector<double> &signs) const;

   /// Sorted ids of all dofs whose nodes lie on boundary edges. Only
   /// meaningful for H1 spaces (L2/RT boundary conditions are natural);
   /// throws for other families.
   std::vector<int> essential_boundary_dofs() const;

private:
   const Mesh *mesh_;
   Family family_;
   int order_;
   int vdim_;
   int scalar_ndofs_ = 0;

   int edge_dofs_per_edge_ = 0;
   int edge_offset_ = 0;     // first edge dof id
   int interior_offset_ = 0; // first interior dof id
   std::vector<int> elem_interior_start_;

   // flattened per-element dof ids and signs
   std::vector<int> elem_dof_start_;
   std::vector<int> dof_ids_;
   std::vector<double> dof_signs_;

   void number_dofs();
};

inline FESpace build_space(const Mesh &mesh, Family family, int order,
                           int vdim = 1)
{
   return FESpace(mesh, family, order, vdim);
}

} // namespace poismix

#endif
