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

#ifndef POISMIX_POSTPROCESS_HPP
#define POISMIX_POSTPROCESS_HPP

#include "poismix/fespace.hpp"

#include <utility>
#include <vector>

namespace poismix
{

/// Coefficient vector bound to a finite element space, evaluable per
/// element at reference points (Piola-mapped for RT spaces).
struct GridFunction
{
   const FESpace *space = nullptr;
   std::vector<double> coeffs;

   explicit GridFunction(const FESpace &s)
      : space(&s), coeffs(s.ndofs(), 0.0) { }
   GridFunction(const FESpace &s, std::vector<double> c);
   // grid functions reference their space; temporaries would dangle
   explicit GridFunction(FESpace &&) = delete;
   GridFunction(FESpace &&, std::vector<double>) = delete;

   double eval_scalar(int elem, Vec2 ref) const;
   Vec2 eval_vector(int elem, Vec2 ref) const;
};

/// sqrt of the elementwise quadrature of |gf - exact|^2 at the given
/// accuracy; exact = 0 gives the L2 norm of gf.
double compute_l2_error(const GridFunction &gf, const ScalarField &exact,
                        int quad_accuracy);
double compute_l2_error(const GridFunction &gf, const VectorField &exact,
                        int quad_accuracy);

/// L2 norm of a plain field over the mesh (quadrature at the given
/// accuracy); vector fields use the pointwise Euclidean norm.
double field_l2_norm(const Mesh &mesh, const ScalarField &f,
                     int quad_accuracy);
double field_l2_norm(const Mesh &mesh, const VectorField &f,
                     int quad_accuracy);

/// sqrt(err_x^2 + err_y^2).
double combine_velocity_error(double err_x, double err_y);
/// Same, divided by the norm of the reference velocity; throws if the
/// norm is zero.
double combine_velocity_error_normalized(double err_x, double err_y,
                                         double norm_u);

/// How velocity components are moved into the discontinuous space:
/// interpolation at the space's nodal points (what derivative extraction
/// in the reference library does) or a true elementwise L2 projection.
enum class VelocityExtraction { NodalInterpolation, L2Projection };

/// Componentwise extraction of u = -grad p from an H1 solution into the
/// discontinuous space (l2 order must be the H1 order minus one).
std::pair<GridFunction, GridFunction>
recover_gradient(const GridFunction &p, const FESpace &l2_space,
                 VelocityExtraction mode = VelocityExtraction::L2Projection);

/// Componentwise extraction of the Cartesian components of a Piola-mapped
/// RT field into the discontinuous space.
std::pair<GridFunction, GridFunction>
project_rt_components(const GridFunction &u, const FESpace &l2_space,
                      VelocityExtraction mode = VelocityExtraction::L2Projection);

/// L2 norm of the difference of two grid functions over a shared mesh
/// (spaces may differ); integrates at the larger of the two spaces'
/// required quadrature orders.
double comparison_error(const GridFunction &a, const GridFunction &b);

/// Reference solution fields the computed solutions are compared against.
struct ReferenceFields
{
   ScalarField p;
   VectorField u; // u = -grad p
   ScalarField ux, uy;
};

/// p = e^x sin y, u = (-e^x sin y, -e^x cos y).
ReferenceFields exp_sine_reference();

/// p = sin(pi x) sin(pi y) and its negative gradient (matches
/// ProblemSpec::manufactured()).
ReferenceFields manufactured_reference();

} // namespace poismix

#endif
