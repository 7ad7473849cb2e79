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

#include "poismix/postprocess.hpp"

#include "smalldense.hpp"

#include <algorithm>
#include <cmath>

namespace poismix
{

GridFunction::GridFunction(const FESpace &s, std::vector<double> c)
   : space(&s), coeffs(std::move(c))
{
   if ((int)coeffs.size() != s.ndofs())
   {
      throw Error("GridFunction: coefficient count does not match space");
   }
}

double GridFunction::eval_scalar(int elem, Vec2 ref) const
{
   const FESpace &fes = *space;
   if (fes.family() == Family::RT)
   {
      throw Error("eval_scalar: scalar evaluation of an RT function");
   }
   const ReferenceElement &re = fes.ref_elem(fes.mesh().element(elem).kind);
   const int n = re.ndofs();
   std::vector<double> vals(n);
   re.eval(ref, vals);
   std::vector<int> ids;
   std::vector<double> signs;
   fes.element_dofs(elem, ids, signs);
   double v = 0.0;
   for (int a = 0; a < n; a++)
   {
      v += coeffs[ids[a]] * signs[a] * vals[a];
   }
   return v;
}

Vec2 GridFunction::eval_vector(int elem, Vec2 ref) const
{
   const FESpace &fes = *space;
   if (fes.family() != Family::RT)
   {
      throw Error("eval_vector: vector evaluation of a scalar function");
   }
   const ReferenceElement &re = fes.ref_elem(fes.mesh().element(elem).kind);
   const int n = re.ndofs();
   std::vector<Vec2> vals(n);
   std::vector<double> divs(n);
   re.eval_vector(ref, vals, divs);
   std::vector<int> ids;
   std::vector<double> signs;
   fes.element_dofs(elem, ids, signs);
   Vec2 ref_v = {0.0, 0.0};
   for (int a = 0; a < n; a++)
   {
      ref_v = ref_v + (coeffs[ids[a]] * signs[a]) * vals[a];
   }
   const auto J = fes.mesh().geometry(elem).checked_jacobian(ref);
   return piola_value(J, ref_v);
}

namespace
{

template <typename EvalDiff>
double integrate_sq(const Mesh &mesh, int quad_accuracy, EvalDiff &&diff_sq)
{
   double total = 0.0;
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const ElementGeometry geom = mesh.geometry(e);
      const QuadRule &rule =
         rule_for_geometry(ref_geometry(mesh.element(e).kind), quad_accuracy);
      for (int q = 0; q < rule.size(); q++)
      {
         const Vec2 rp = rule.points[q];
         const double det = geom.checked_jacobian(rp).det;
         total += rule.weights[q] * det * diff_sq(e, rp, geom.map(rp));
      }
   }
   return std::sqrt(std::max(0.0, total));
}

} // namespace

double compute_l2_error(const GridFunction &gf, const ScalarField &exact,
                        int quad_accuracy)
{
   return integrate_sq(gf.space->mesh(), quad_accuracy,
                       [&](int e, Vec2 rp, Vec2 xp)
   {
      const double d = gf.eval_scalar(e, rp) - exact(xp);
      return d * d;
   });
}

double compute_l2_error(const GridFunction &gf, const VectorField &exact,
                        int quad_accuracy)
{
   return integrate_sq(gf.space->mesh(), quad_accuracy,
                       [&](int e, Vec2 rp, Vec2 xp)
   {
      const Vec2 d = gf.eval_vector(e, rp) - exact(xp);
      return dot(d, d);
   });
}

double field_l2_norm(const Mesh &mesh, const ScalarField &f, int quad_accuracy)
{
   return integrate_sq(mesh, quad_accuracy, [&](int, Vec2, Vec2 xp)
   {
      const double v = f(xp);
      return v * v;
   });
}

double field_l2_norm(const Mesh &mesh, const VectorField &f, int quad_accuracy)
{
   return integrate_sq(mesh, quad_accuracy, [&](int, Vec2, Vec2 xp)
   {
      const Vec2 v = f(xp);
      return dot(v, v);
   });
}

double combine_velocity_error(double err_x, double err_y)
{
   if (err_x < 0.0 || err_y < 0.0)
   {
      throw Error("combine_velocity_error: negative component error");
   }
   return std::sqrt(err_x * err_x + err_y * err_y);
}

double combine_velocity_error_normalized(double err_x, double err_y,
                                         double norm_u)
{
   if (norm_u == 0.0)
   {
      throw Error("combine_velocity_error_normalized: zero reference norm");
   }
   return combine_velocity_error(err_x, err_y) / norm_u;
}

// ---------------------------------------------------------------------------
// velocity extraction

namespace
{

// Fill one element of the target discontinuous space from a reference-point
// evaluator, either by interpolation at the space's nodes or by a local L2
// projection.
template <typename Evaluator>
void extract_element(const FESpace &l2, int elem, VelocityExtraction mode,
                     Evaluator &&value_at, std::vector<double> &out)
{
   const ReferenceElement &re = l2.ref_elem(l2.mesh().element(elem).kind);
   const int n = re.ndofs();
   std::vector<int> ids;
   std::vector<double> signs;
   l2.element_dofs(elem, ids, signs);

   if (mode == VelocityExtraction::NodalInterpolation)
   {
      for (int a = 0; a < n; a++)
      {
         out[ids[a]] = value_at(re.nodes()[a]);
      }
      return;
   }

   // local projection: solve (M_loc) c = rhs with quadrature mass matrix
   const int accuracy = 2 * l2.order() + 4;
   const QuadRule &rule = rule_for_geometry(re.geometry(), accuracy);
   const ElementGeometry geom = l2.mesh().geometry(elem);
   std::vector<double> mass(n * n, 0.0), rhs(n, 0.0), vals(n);
   for (int q = 0; q < rule.size(); q++)
   {
      const Vec2 rp = rule.points[q];
      const double w = rule.weights[q] * geom.checked_jacobian(rp).det;
      re.eval(rp, vals);
      const double f = value_at(rp);
      for (int a = 0; a < n; a++)
      {
         rhs[a] += w * f * vals[a];
         for (int b = 0; b < n; b++)
         {
            mass[a * n + b] += w * vals[a] * vals[b];
         }
      }
   }
   const smalldense::LU lu = smalldense::factor(std::move(mass), n);
   std::vector<double> c(n);
   smalldense::solve(lu, rhs.data(), c.data());
   for (int a = 0; a < n; a++) { out[ids[a]] = c[a]; }
}

} // namespace

std::pair<GridFunction, GridFunction>
recover_gradient(const GridFunction &p, const FESpace &l2_space,
                 VelocityExtraction mode)
{
   const FESpace &h1 = *p.space;
   if (h1.family() != Family::H1Lagrange ||
       l2_space.family() != Family::L2Disc)
   {
      throw Error("recover_gradient: expects (H1 solution, L2 target)");
   }
   if (&h1.mesh() != &l2_space.mesh())
   {
      throw Error("recover_gradient: meshes differ");
   }
   if (l2_space.order() != h1.order() - 1)
   {
      throw Error("recover_gradient: L2 order must be H1 order - 1");
   }

   const Mesh &mesh = h1.mesh();
   GridFunction ux(l2_space), uy(l2_space);

   std::vector<int> ids;
   std::vector<double> signs, vals;
   std::vector<Vec2> grads;

   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const ReferenceElement &re = h1.ref_elem(mesh.element(e).kind);
      const ElementGeometry geom = mesh.geometry(e);
      const int n = re.ndofs();
      h1.element_dofs(e, ids, signs);
      vals.resize(n);
      grads.resize(n);

      auto grad_at = [&](Vec2 rp) -> Vec2
      {
         re.eval_gradients(rp, vals, grads);
         const auto J = geom.checked_jacobian(rp);
         const double inv = 1.0 / J.det;
         Vec2 g = {0.0, 0.0};
         for (int a = 0; a < n; a++)
         {
            g = g + (p.coeffs[ids[a]] * signs[a]) * grads[a];
         }
         return {inv * (J.j11 * g.x - J.j10 * g.y),
                 inv * (-J.j01 * g.x + J.j00 * g.y)};
      };

      extract_element(l2_space, e, mode,
                      [&](Vec2 rp) { return -grad_at(rp).x; }, ux.coeffs);
      extract_element(l2_space, e, mode,
                      [&](Vec2 rp) { return -grad_at(rp).y; }, uy.coeffs);
   }
   return {std::move(ux), std::move(uy)};
}

std::pair<GridFunction, GridFunction>
project_rt_components(const GridFunction &u, const FESpace &l2_space,
                      VelocityExtraction mode)
{
   const FESpace &rt = *u.space;
   if (rt.family() != Family::RT || l2_space.family() != Family::L2Disc)
   {
      throw Error("project_rt_components: expects (RT solution, L2 target)");
   }
   if (&rt.mesh() != &l2_space.mesh())
   {
      throw Error("project_rt_components: meshes differ");
   }

   const Mesh &mesh = rt.mesh();
   GridFunction ux(l2_space), uy(l2_space);

   for (int e = 0; e < mesh.num_elements(); e++)
   {
      extract_element(l2_space, e, mode,
                      [&](Vec2 rp) { return u.eval_vector(e, rp).x; },
                      ux.coeffs);
      extract_element(l2_space, e, mode,
                      [&](Vec2 rp) { return u.eval_vector(e, rp).y; },
                      uy.coeffs);
   }
   return {std::move(ux), std::move(uy)};
}

double comparison_error(const GridFunction &a, const GridFunction &b)
{
   if (&a.space->mesh() != &b.space->mesh())
   {
      throw Error("comparison_error: grid functions live on different meshes");
   }
   const int accuracy = std::max(required_order(a.space->order()),
                                 required_order(b.space->order()));
   const bool a_vec = a.space->family() == Family::RT;
   const bool b_vec = b.space->family() == Family::RT;
   if (a_vec != b_vec)
   {
      throw Error("comparison_error: cannot compare scalar and vector "
                  "functions directly");
   }
   if (a_vec)
   {
      return integrate_sq(a.space->mesh(), accuracy, [&](int e, Vec2 rp, Vec2)
      {
         const Vec2 d = a.eval_vector(e, rp) - b.eval_vector(e, rp);
         return dot(d, d);
      });
   }
   return integrate_sq(a.space->mesh(), accuracy, [&](int e, Vec2 rp, Vec2)
   {
      const double d = a.eval_scalar(e, rp) - b.eval_scalar(e, rp);
      return d * d;
   });
}

ReferenceFields exp_sine_reference()
{
   ReferenceFields rf;
   rf.p = [](Vec2 p) { return std::exp(p.x) * std::sin(p.y); };
   rf.u = [](Vec2 p) -> Vec2
   {
      return {-std::exp(p.x) * std::sin(p.y), -std::exp(p.x) * std::cos(p.y)};
   };
   rf.ux = [](Vec2 p) { return -std::exp(p.x) * std::sin(p.y); };
   rf.uy = [](Vec2 p) { return -std::exp(p.x) * std::cos(p.y); };
   return rf;
}

ReferenceFields manufactured_reference()
{
   ReferenceFields rf;
   rf.p = [](Vec2 p)
   {
      return std::sin(M_PI * p.x) * std::sin(M_PI * p.y);
   };
   rf.u = [](Vec2 p) -> Vec2
   {
      return {-M_PI * std::cos(M_PI * p.x) * std::sin(M_PI * p.y),
              -M_PI * std::sin(M_PI * p.x) * std::cos(M_PI * p.y)};
   };
   rf.ux = [](Vec2 p)
   {
      return -M_PI * std::cos(M_PI * p.x) * std::sin(M_PI * p.y);
   };
   rf.uy = [](Vec2 p)
   {
      return -M_PI * std::sin(M_PI * p.x) * std::cos(M_PI * p.y);
   };
   return rf;
}

} // namespace poismix
