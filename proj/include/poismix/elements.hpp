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

#ifndef POISMIX_ELEMENTS_HPP
#define POISMIX_ELEMENTS_HPP

#include "poismix/common.hpp"
#include "poismix/mesh.hpp"
#include "poismix/quadrature.hpp"

#include <span>
#include <vector>

namespace poismix
{

enum class Family { H1Lagrange, L2Disc, RT };

struct DofDescriptor
{
   enum class Kind { Vertex, Edge, Interior };
   Kind kind;
   int entity; // local vertex / local edge index (0 for interior)
   int index;  // node position along edge, moment order, or interior ordinal
};

// Reference shape functions on the unit triangle / unit square.
//
// The basis is constructed as the dual of an explicit set of DOF
// functionals: point evaluations at nodes for H1Lagrange (equally spaced
// lattice) and L2Disc (tensor Gauss points on quads), and for RT
// normal-flux edge moments (weighted by Gauss-node cardinal polynomials)
// plus interior moments (quads) or interior component values (triangles).
// Duality (functional_i of basis_j = delta_ij) holds by construction;
// duality tests re-verify it with independent quadrature.
//
// Supported orders: H1Lagrange k in [1,6]; L2Disc and RT k in [0,5].
// RT local dimensions: (k+1)(k+3) on triangles, 2(k+1)(k+2) on quads.
class ReferenceElement
{
public:
   static const ReferenceElement &get(Family family, int order,
                                      RefGeometry geom);

   Family family() const { return family_; }
   int order() const { return order_; }
   RefGeometry geometry() const { return geom_; }
   int ndofs() const { return (int)dofs_.size(); }
   const std::vector<DofDescriptor> &dofs() const { return dofs_; }

   /// Shape function values at a reference point (H1Lagrange/L2Disc).
   void eval(Vec2 p, std::span<double> values) const;

   /// Values and reference gradients (H1Lagrange/L2Disc).
   void eval_gradients(Vec2 p, std::span<double> values,
                       std::span<Vec2> gradients) const;

   /// Reference vector values and reference divergences (RT).
   void eval_vector(Vec2 p, std::span<Vec2> values,
                    std::span<double> divergences) const;

   /// Nodal points, aligned with dof order (H1Lagrange/L2Disc).
   const std::vector<Vec2> &nodes() const;

   /// Apply DOF functional i to an arbitrary reference-coordinate field.
   /// Moment functionals are integrated with a high-order rule independent
   /// of the one used in construction.
   double apply_functional(int i, const ScalarField &f) const;
   double apply_functional(int i, const VectorField &f) const;

private:
   ReferenceElement(Family family, int order, RefGeometry geom);

   void build_scalar();
   void build_rt();
   void invert_functional_matrix(const std::vector<double> &F);
   void check_point(Vec2 p) const;

   // generator evaluation (tensor shifted-Legendre on quads, monomials on
   // triangles; RT adds the radial (x,y)*P_k block on triangles)
   int num_generators() const;
   void gen_values(Vec2 p, double *vals, Vec2 *grads) const;
   void gen_vector_values(Vec2 p, Vec2 *vals, double *divs) const;

   Family family_;
   int order_;
   RefGeometry geom_;
   std::vector<DofDescriptor> dofs_;
   std::vector<Vec2> nodes_;                 // scalar families
   std::vector<double> coeff_;               // generators x dofs, row-major
   struct VectorGen { int comp; int i, j; }; // comp 2 = radial block
   std::vector<VectorGen> vgens_;            // RT only
   struct InteriorMoment { int comp; int i, j; };
   std::vector<InteriorMoment> interior_moments_; // RT only
};

/// Contravariant (Piola) map of a reference vector value: v = J*vhat/det J.
Vec2 piola_value(const ElementGeometry::Jacobian &J, Vec2 ref_vec);

/// Divergence under the Piola map: div v = divhat/det J.
double piola_divergence(const ElementGeometry::Jacobian &J, double ref_div);

} // namespace poismix

#endif
