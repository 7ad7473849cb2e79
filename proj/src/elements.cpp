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

#include "poismix/elements.hpp"

#include "smalldense.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace poismix
{

namespace
{

constexpr int max_legendre = 8;

// Shifted Legendre P~_n(t) = P_n(2t-1) on [0,1], values and t-derivatives
// for n = 0..nmax.
void shifted_legendre(int nmax, double t, double *p, double *dp)
{
   const double u = 2.0 * t - 1.0;
   p[0] = 1.0;
   dp[0] = 0.0;
   if (nmax == 0) { return; }
   p[1] = u;
   dp[1] = 2.0;
   for (int n = 2; n <= nmax; n++)
   {
      p[n] = ((2 * n - 1) * u * p[n - 1] - (n - 1) * p[n - 2]) / n;
      dp[n] = ((2 * n - 1) * (2.0 * p[n - 1] + u * dp[n - 1]) -
               (n - 1) * dp[n - 2]) / n;
   }
}

double shifted_legendre_one(int n, double t)
{
   double p[max_legendre + 1], dp[max_legendre + 1];
   shifted_legendre(n, t, p, dp);
   return p[n];
}

struct RefEdge
{
   Vec2 a, b;
   Vec2 n_out;
   double len;
};

RefEdge ref_edge(RefGeometry geom, int le)
{
   static const RefEdge quad_edges[4] =
   {
      {{0, 0}, {1, 0}, {0, -1}, 1.0},
      {{1, 0}, {1, 1}, {1, 0}, 1.0},
      {{1, 1}, {0, 1}, {0, 1}, 1.0},
      {{0, 1}, {0, 0}, {-1, 0}, 1.0},
   };
   static const double s = 1.0 / std::sqrt(2.0);
   static const RefEdge tri_edges[3] =
   {
      {{0, 0}, {1, 0}, {0, -1}, 1.0},
      {{1, 0}, {0, 1}, {s, s}, std::sqrt(2.0)},
      {{0, 1}, {0, 0}, {-1, 0}, 1.0},
   };
   return geom == RefGeometry::Quad ? quad_edges[le] : tri_edges[le];
}

int num_edges(RefGeometry geom) { return geom == RefGeometry::Quad ? 4 : 3; }

// Quadrature accuracy for functional integration; exact for every
// generator-times-moment product at the supported orders.
constexpr int functional_accuracy = 26;

// Edge moment weights: Lagrange cardinal polynomials on the (m+1)-point
// Gauss nodes of [0,1]. Moments against cardinals keep the dual basis
// well conditioned (plain Legendre moments do not, on triangles), and the
// node symmetry t -> 1-t maps cardinal j to cardinal m-j, which makes the
// orientation flip a permutation with a sign.
std::vector<double> edge_gauss_nodes(int m)
{
   const QuadRule gl = gauss_legendre_1d(m + 1);
   std::vector<double> t(m + 1);
   for (int i = 0; i <= m; i++) { t[i] = 0.5 * (gl.points[i].x + 1.0); }
   return t;
}

double edge_cardinal(const std::vector<double> &nodes, int j, double t)
{
   double v = 1.0;
   for (std::size_t i = 0; i < nodes.size(); i++)
   {
      if ((int)i == j) { continue; }
      v *= (t - nodes[i]) / (nodes[j] - nodes[i]);
   }
   return v;
}

// Strictly interior principal lattice carrying the triangle RT interior
// (component point value) dofs.
Vec2 triangle_interior_point(int i, int j, int m)
{
   return {(i + 1.0) / (m + 2.0), (j + 1.0) / (m + 2.0)};
}

} // namespace

// ---------------------------------------------------------------------------
// construction

const ReferenceElement &ReferenceElement::get(Family family, int order,
                                              RefGeometry geom)
{
   if (geom != RefGeometry::Triangle && geom != RefGeometry::Quad)
   {
      throw Error("ReferenceElement: unsupported geometry");
   }
   const int lo = family == Family::H1Lagrange ? 1 : 0;
   const int hi = family == Family::H1Lagrange ? 6 : 5;
   if (order < lo || order > hi)
   {
      throw Error("ReferenceElement: order " + std::to_string(order) +
                  " out of supported range [" + std::to_string(lo) + "," +
                  std::to_string(hi) + "]");
   }

   static std::map<std::tuple<int, int, int>,
          std::unique_ptr<ReferenceElement>> cache;
   static std::mutex mutex;
   std::lock_guard<std::mutex> lock(mutex);

   const auto key = std::make_tuple((int)family, order, (int)geom);
   auto it = cache.find(key);
   if (it == cache.end())
   {
      it = cache.emplace(key, std::unique_ptr<ReferenceElement>(
                            new ReferenceElement(family, order, geom))).first;
   }
   return *it->second;
}

ReferenceElement::ReferenceElement(Family family, int order, RefGeometry geom)
   : family_(family), order_(order), geom_(geom)
{
   if (family_ == Family::RT) { build_rt(); }
   else { build_scalar(); }
}

int ReferenceElement::num_generators() const
{
   if (family_ == Family::RT) { return (int)vgens_.size(); }
   const int k = order_;
   return geom_ == RefGeometry::Quad ? (k + 1) * (k + 1)
          : (k + 1) * (k + 2) / 2;
}

// Scalar generators: tensor shifted-Legendre (i,j) on quads, monomials
// x^i y^j with i+j <= k on triangles, enumerated in a fixed order.
template <typename F>
static void for_each_scalar_gen(RefGeometry geom, int k, F &&fn)
{
   int g = 0;
   if (geom == RefGeometry::Quad)
   {
      for (int j = 0; j <= k; j++)
      {
         for (int i = 0; i <= k; i++) { fn(g++, i, j); }
      }
   }
   else
   {
      for (int d = 0; d <= k; d++)
      {
         for (int i = d; i >= 0; i--) { fn(g++, i, d - i); }
      }
   }
}

void ReferenceElement::gen_values(Vec2 p, double *vals, Vec2 *grads) const
{
   // Shifted-Legendre products on both geometries: {P~_i(x) P~_j(y)} with
   // i,j <= k spans Q_k, and restricted to i+j <= k it is a (much better
   // conditioned) basis of P_k.
   const int k = order_;
   double lx[max_legendre + 1], dlx[max_legendre + 1];
   double ly[max_legendre + 1], dly[max_legendre + 1];
   shifted_legendre(k, p.x, lx, dlx);
   shifted_legendre(k, p.y, ly, dly);
   for_each_scalar_gen(geom_, k, [&](int g, int i, int j)
   {
      vals[g] = lx[i] * ly[j];
      if (grads) { grads[g] = {dlx[i] * ly[j], lx[i] * dly[j]}; }
   });
}

void ReferenceElement::gen_vector_values(Vec2 p, Vec2 *vals,
                                         double *divs) const
{
   const int m = order_;
   if (geom_ == RefGeometry::Quad)
   {
      double lx[max_legendre + 1], dlx[max_legendre + 1];
      double ly[max_legendre + 1], dly[max_legendre + 1];
      shifted_legendre(m + 1, p.x, lx, dlx);
      shifted_legendre(m + 1, p.y, ly, dly);
      for (std::size_t g = 0; g < vgens_.size(); g++)
      {
         const auto &vg = vgens_[g];
         if (vg.comp == 0)
         {
            vals[g] = {lx[vg.i] * ly[vg.j], 0.0};
            divs[g] = dlx[vg.i] * ly[vg.j];
         }
         else
         {
            vals[g] = {0.0, lx[vg.i] * ly[vg.j]};
            divs[g] = lx[vg.i] * dly[vg.j];
         }
      }
   }
   else
   {
      double lx[max_legendre + 1], dlx[max_legendre + 1];
      double ly[max_legendre + 1], dly[max_legendre + 1];
      shifted_legendre(m, p.x, lx, dlx);
      shifted_legendre(m, p.y, ly, dly);
      for (std::size_t g = 0; g < vgens_.size(); g++)
      {
         const auto &vg = vgens_[g];
         const int i = vg.i, j = vg.j;
         const double G = lx[i] * ly[j];
         const double Gx = dlx[i] * ly[j];
         const double Gy = lx[i] * dly[j];
         if (vg.comp == 0)
         {
            vals[g] = {G, 0.0};
            divs[g] = Gx;
         }
         else if (vg.comp == 1)
         {
            vals[g] = {0.0, G};
            divs[g] = Gy;
         }
         else
         {
            // radial block: (x,y) * G with G of total degree m; its top
            // homogeneous part supplies the x*P_m^hom component of RT_m
            vals[g] = {p.x * G, p.y * G};
            divs[g] = 2.0 * G + p.x * Gx + p.y * Gy;
         }
      }
   }
}

void ReferenceElement::build_scalar()
{
   const int k = order_;
   const int ne = num_edges(geom_);

   if (family_ == Family::L2Disc)
   {
      // Discontinuous space: every dof is interior to the element. Quads
      // use tensor Gauss-Legendre nodes (the conventional choice for DG
      // spaces, and what nodal interpolation of derivatives relies on);
      // triangles use the principal lattice.
      int ordinal = 0;
      if (geom_ == RefGeometry::Quad)
      {
         const QuadRule gl = gauss_legendre_1d(k + 1);
         for (int j = 0; j <= k; j++)
         {
            for (int i = 0; i <= k; i++)
            {
               nodes_.push_back({0.5 * (gl.points[i].x + 1.0),
                                 0.5 * (gl.points[j].x + 1.0)});
               dofs_.push_back({DofDescriptor::Kind::Interior, 0, ordinal++});
            }
         }
      }
      else if (k == 0)
      {
         nodes_.push_back({1.0 / 3.0, 1.0 / 3.0});
         dofs_.push_back({DofDescriptor::Kind::Interior, 0, 0});
      }
      else
      {
         for (int j = 0; j <= k; j++)
         {
            for (int i = 0; i + j <= k; i++)
            {
               nodes_.push_back({(double)i / k, (double)j / k});
               dofs_.push_back({DofDescriptor::Kind::Interior, 0, ordinal++});
            }
         }
      }
   }
   else
   {
      // H1 Lagrange: vertex nodes, then equally spaced edge nodes ordered
      // along the local (counterclockwise) edge direction, then interior.
      for (int a = 0; a < ne; a++)
      {
         nodes_.push_back(ref_edge(geom_, a).a);
         dofs_.push_back({DofDescriptor::Kind::Vertex, a, 0});
      }
      for (int le = 0; le < ne; le++)
      {
         const RefEdge edge = ref_edge(geom_, le);
         for (int j = 0; j + 1 < k; j++)
         {
            const double t = (double)(j + 1) / k;
            nodes_.push_back({edge.a.x + t * (edge.b.x - edge.a.x),
                              edge.a.y + t * (edge.b.y - edge.a.y)});
            dofs_.push_back({DofDescriptor::Kind::Edge, le, j});
         }
      }
      int ordinal = 0;
      if (geom_ == RefGeometry::Quad)
      {
         for (int j = 1; j < k; j++)
         {
            for (int i = 1; i < k; i++)
            {
               nodes_.push_back({(double)i / k, (double)j / k});
               dofs_.push_back({DofDescriptor::Kind::Interior, 0, ordinal++});
            }
         }
      }
      else
      {
         for (int j = 1; j < k; j++)
         {
            for (int i = 1; i + j < k; i++)
            {
               nodes_.push_back({(double)i / k, (double)j / k});
               dofs_.push_back({DofDescriptor::Kind::Interior, 0, ordinal++});
            }
         }
      }
   }

   const int n = (int)dofs_.size();
   if (n != num_generators())
   {
      throw Error("ReferenceElement: dof/generator count mismatch");
   }

   // F[i][g] = gen_g(node_i); basis coefficients are its inverse.
   std::vector<double> F(n * n);
   std::vector<double> vals(n);
   for (int i = 0; i < n; i++)
   {
      gen_values(nodes_[i], vals.data(), nullptr);
      for (int g = 0; g < n; g++) { F[i * n + g] = vals[g]; }
   }
   invert_functional_matrix(F);
}

void ReferenceElement::build_rt()
{
   const int m = order_;
   const int ne = num_edges(geom_);

   if (geom_ == RefGeometry::Quad)
   {
      for (int j = 0; j <= m; j++)
      {
         for (int i = 0; i <= m + 1; i++) { vgens_.push_back({0, i, j}); }
      }
      for (int j = 0; j <= m + 1; j++)
      {
         for (int i = 0; i <= m; i++) { vgens_.push_back({1, i, j}); }
      }
   }
   else
   {
      for (int comp = 0; comp < 2; comp++)
      {
         for (int d = 0; d <= m; d++)
         {
            for (int i = d; i >= 0; i--) { vgens_.push_back({comp, i, d - i}); }
         }
      }
      for (int a = m; a >= 0; a--) { vgens_.push_back({2, a, m - a}); }
   }

   // Edge dofs: moments of the outward normal trace against shifted
   // Legendre polynomials in the local edge parameter.
   for (int le = 0; le < ne; le++)
   {
      for (int j = 0; j <= m; j++)
      {
         dofs_.push_back({DofDescriptor::Kind::Edge, le, j});
      }
   }
   // Interior dofs: componentwise moments against Q_{m-1,m} x Q_{m,m-1}
   // (quads) or [P_{m-1}]^2 (triangles).
   int ordinal = 0;
   if (geom_ == RefGeometry::Quad)
   {
      for (int j = 0; j <= m; j++)
      {
         for (int i = 0; i + 1 <= m; i++)
         {
            interior_moments_.push_back({0, i, j});
            dofs_.push_back({DofDescriptor::Kind::Interior, 0, ordinal++});
         }
      }
      for (int j = 0; j + 1 <= m; j++)
      {
         for (int i = 0; i <= m; i++)
         {
            interior_moments_.push_back({1, i, j});
            dofs_.push_back({DofDescriptor::Kind::Interior, 0, ordinal++});
         }
      }
   }
   else
   {
      for (int comp = 0; comp < 2; comp++)
      {
         for (int d = 0; d + 1 <= m; d++)
         {
            for (int i = d; i >= 0; i--)
            {
               interior_moments_.push_back({comp, i, d - i});
               dofs_.push_back({DofDescriptor::Kind::Interior, 0, ordinal++});
            }
         }
      }
   }

   const int n = (int)dofs_.size();
   if (n != (int)vgens_.size())
   {
      throw Error("ReferenceElement: RT dof/generator count mismatch");
   }

   std::vector<double> F(n * n, 0.0);
   std::vector<Vec2> vals(n);
   std::vector<double> divs(n);

   // Edge moment rows (flux moments against Gauss cardinals), one Gauss
   // segment rule per edge.
   const std::vector<double> nodes = edge_gauss_nodes(m);
   const QuadRule &seg = rule_for_geometry(RefGeometry::Segment,
                                           functional_accuracy);
   for (int le = 0; le < ne; le++)
   {
      const RefEdge edge = ref_edge(geom_, le);
      for (int q = 0; q < seg.size(); q++)
      {
         const double t = 0.5 * (seg.points[q].x + 1.0);
         const double w = 0.5 * seg.weights[q] * edge.len;
         const Vec2 p = {edge.a.x + t * (edge.b.x - edge.a.x),
                         edge.a.y + t * (edge.b.y - edge.a.y)
                        };
         gen_vector_values(p, vals.data(), divs.data());
         for (int j = 0; j <= m; j++)
         {
            const int row = le * (m + 1) + j;
            const double weight = edge_cardinal(nodes, j, t);
            for (int g = 0; g < n; g++)
            {
               F[row * n + g] += w * weight * dot(vals[g], edge.n_out);
            }
         }
      }
   }

   const int interior_offset = ne * (m + 1);
   if (geom_ == RefGeometry::Quad && !interior_moments_.empty())
   {
      // componentwise moments against Q_{m-1,m} x Q_{m,m-1}
      const QuadRule &vol = rule_for_geometry(geom_, functional_accuracy);
      for (int q = 0; q < vol.size(); q++)
      {
         const Vec2 p = vol.points[q];
         const double w = vol.weights[q];
         gen_vector_values(p, vals.data(), divs.data());
         for (std::size_t im = 0; im < interior_moments_.size(); im++)
         {
            const auto &mom = interior_moments_[im];
            const double weight_fn = shifted_legendre_one(mom.i, p.x) *
                                     shifted_legendre_one(mom.j, p.y);
            const int row = interior_offset + (int)im;
            for (int g = 0; g < n; g++)
            {
               const double comp = mom.comp == 0 ? vals[g].x : vals[g].y;
               F[row * n + g] += w * weight_fn * comp;
            }
         }
      }
   }
   else if (geom_ == RefGeometry::Triangle)
   {
      // component point values at interior lattice points
      for (std::size_t im = 0; im < interior_moments_.size(); im++)
      {
         const auto &mom = interior_moments_[im];
         const Vec2 p = triangle_interior_point(mom.i, mom.j, m);
         gen_vector_values(p, vals.data(), divs.data());
         const int row = interior_offset + (int)im;
         for (int g = 0; g < n; g++)
         {
            F[row * n + g] = mom.comp == 0 ? vals[g].x : vals[g].y;
         }
      }
   }

   invert_functional_matrix(F);
}

void ReferenceElement::invert_functional_matrix(const std::vector<double> &F)
{
   const int n = (int)dofs_.size();

   // Orthonormalize the generators against the element L2 inner product
   // first (modified Gram-Schmidt on weighted sample values, with one
   // reorthogonalization pass). The functional matrix of the orthonormal
   // set is well conditioned, which keeps the duality residual of the
   // inverse near machine precision even for the high-order triangle
   // spaces. T is the transform: ghat_a = sum_b T[a][b] g_b.
   const QuadRule &rule = rule_for_geometry(geom_, functional_accuracy);
   const int nq = rule.size();
   const int width = family_ == Family::RT ? 2 * nq : nq;

   std::vector<double> samples((std::size_t)n * width);
   {
      std::vector<double> sv(n);
      std::vector<Vec2> vv(n);
      std::vector<double> dv(n);
      for (int q = 0; q < nq; q++)
      {
         const double sw = std::sqrt(rule.weights[q]);
         if (family_ == Family::RT)
         {
            gen_vector_values(rule.points[q], vv.data(), dv.data());
            for (int g = 0; g < n; g++)
            {
               samples[g * width + 2 * q] = sw * vv[g].x;
               samples[g * width + 2 * q + 1] = sw * vv[g].y;
            }
         }
         else
         {
            gen_values(rule.points[q], sv.data(), nullptr);
            for (int g = 0; g < n; g++)
            {
               samples[g * width + q] = sw * sv[g];
            }
         }
      }
   }

   std::vector<double> T((std::size_t)n * n, 0.0);
   for (int a = 0; a < n; a++) { T[a * n + a] = 1.0; }
   for (int a = 0; a < n; a++)
   {
      double *va = &samples[(std::size_t)a * width];
      for (int pass = 0; pass < 2; pass++)
      {
         for (int b = 0; b < a; b++)
         {
            const double *vb = &samples[(std::size_t)b * width];
            double r = 0.0;
            for (int q = 0; q < width; q++) { r += va[q] * vb[q]; }
            for (int q = 0; q < width; q++) { va[q] -= r * vb[q]; }
            for (int g = 0; g <= b; g++)
            {
               T[a * n + g] -= r * T[b * n + g];
            }
         }
      }
      double nrm = 0.0;
      for (int q = 0; q < width; q++) { nrm += va[q] * va[q]; }
      nrm = std::sqrt(nrm);
      if (!(nrm > 0.0))
      {
         throw Error("ReferenceElement: linearly dependent generators");
      }
      for (int q = 0; q < width; q++) { va[q] /= nrm; }
      for (int g = 0; g <= a; g++) { T[a * n + g] /= nrm; }
   }

   // Fhat = F * T^T, rows = functionals, cols = orthonormal generators
   std::vector<double> Fhat((std::size_t)n * n, 0.0);
   for (int i = 0; i < n; i++)
   {
      for (int a = 0; a < n; a++)
      {
         double s = 0.0;
         for (int b = 0; b <= a; b++)
         {
            s += T[a * n + b] * F[i * n + b];
         }
         Fhat[i * n + a] = s;
      }
   }

   const std::vector<double> Chat = smalldense::refined_inverse(Fhat, n);

   // back to the original generators: C = T^T * Chat
   coeff_.assign((std::size_t)n * n, 0.0);
   for (int b = 0; b < n; b++)
   {
      for (int j = 0; j < n; j++)
      {
         double s = 0.0;
         for (int a = b; a < n; a++)
         {
            s += T[a * n + b] * Chat[a * n + j];
         }
         coeff_[b * n + j] = s;
      }
   }
}

// ---------------------------------------------------------------------------
// evaluation

void ReferenceElement::check_point(Vec2 p) const
{
   const double tol = 1e-12;
   bool inside;
   if (geom_ == RefGeometry::Quad)
   {
      inside = p.x >= -tol && p.x <= 1 + tol && p.y >= -tol && p.y <= 1 + tol;
   }
   else
   {
      inside = p.x >= -tol && p.y >= -tol && p.x + p.y <= 1 + tol;
   }
   if (!inside)
   {
      throw Error("reference point (" + std::to_string(p.x) + "," +
                  std::to_string(p.y) + ") outside the reference domain");
   }
}

void ReferenceElement::eval(Vec2 p, std::span<double> values) const
{
   eval_gradients(p, values, {});
}

void ReferenceElement::eval_gradients(Vec2 p, std::span<double> values,
                                      std::span<Vec2> gradients) const
{
   if (family_ == Family::RT)
   {
      throw Error("eval_gradients: scalar evaluation on an RT element");
   }
   check_point(p);
   const int n = ndofs();
   std::vector<double> gv(n);
   std::vector<Vec2> gg(gradients.empty() ? 0 : n);
   gen_values(p, gv.data(), gradients.empty() ? nullptr : gg.data());
   for (int j = 0; j < n; j++)
   {
      double v = 0.0;
      for (int g = 0; g < n; g++) { v += coeff_[g * n + j] * gv[g]; }
      values[j] = v;
   }
   if (!gradients.empty())
   {
      for (int j = 0; j < n; j++)
      {
         Vec2 grad = {0.0, 0.0};
         for (int g = 0; g < n; g++)
         {
            grad = grad + coeff_[g * n + j] * gg[g];
         }
         gradients[j] = grad;
      }
   }
}

void ReferenceElement::eval_vector(Vec2 p, std::span<Vec2> values,
                                   std::span<double> divergences) const
{
   if (family_ != Family::RT)
   {
      throw Error("eval_vector: vector evaluation on a scalar element");
   }
   check_point(p);
   const int n = ndofs();
   std::vector<Vec2> gv(n);
   std::vector<double> gd(n);
   gen_vector_values(p, gv.data(), gd.data());
   for (int j = 0; j < n; j++)
   {
      Vec2 v = {0.0, 0.0};
      double d = 0.0;
      for (int g = 0; g < n; g++)
      {
         v = v + coeff_[g * n + j] * gv[g];
         d += coeff_[g * n + j] * gd[g];
      }
      values[j] = v;
      if (!divergences.empty()) { divergences[j] = d; }
   }
}

const std::vector<Vec2> &ReferenceElement::nodes() const
{
   if (family_ == Family::RT)
   {
      throw Error("nodes: RT elements have moment dofs, not nodes");
   }
   return nodes_;
}

double ReferenceElement::apply_functional(int i, const ScalarField &f) const
{
   if (family_ == Family::RT)
   {
      throw Error("apply_functional: scalar field on an RT element");
   }
   return f(nodes_.at(i));
}

double ReferenceElement::apply_functional(int i, const VectorField &f) const
{
   if (family_ != Family::RT)
   {
      throw Error("apply_functional: vector field on a scalar element");
   }
   const DofDescriptor &dof = dofs_.at(i);
   if (dof.kind == DofDescriptor::Kind::Edge)
   {
      const RefEdge edge = ref_edge(geom_, dof.entity);
      const std::vector<double> nodes = edge_gauss_nodes(order_);
      const QuadRule &seg = rule_for_geometry(RefGeometry::Segment,
                                              functional_accuracy + 6);
      double acc = 0.0;
      for (int q = 0; q < seg.size(); q++)
      {
         const double t = 0.5 * (seg.points[q].x + 1.0);
         const double w = 0.5 * seg.weights[q] * edge.len;
         const Vec2 p = {edge.a.x + t * (edge.b.x - edge.a.x),
                         edge.a.y + t * (edge.b.y - edge.a.y)
                        };
         acc += w * edge_cardinal(nodes, dof.index, t) *
                dot(f(p), edge.n_out);
      }
      return acc;
   }

   const auto &mom = interior_moments_.at(dof.index);
   if (geom_ == RefGeometry::Triangle)
   {
      const Vec2 v = f(triangle_interior_point(mom.i, mom.j, order_));
      return mom.comp == 0 ? v.x : v.y;
   }
   const QuadRule &vol = rule_for_geometry(geom_, functional_accuracy + 6);
   double acc = 0.0;
   for (int q = 0; q < vol.size(); q++)
   {
      const Vec2 p = vol.points[q];
      const double weight_fn = shifted_legendre_one(mom.i, p.x) *
                               shifted_legendre_one(mom.j, p.y);
      const Vec2 v = f(p);
      acc += vol.weights[q] * weight_fn * (mom.comp == 0 ? v.x : v.y);
   }
   return acc;
}

// ---------------------------------------------------------------------------
// Piola transform

Vec2 piola_value(const ElementGeometry::Jacobian &J, Vec2 ref_vec)
{
   if (!(J.det > 0.0))
   {
      throw Error("piola_value: singular or inverted Jacobian");
   }
   const double inv = 1.0 / J.det;
   return {inv * (J.j00 * ref_vec.x + J.j01 * ref_vec.y),
           inv * (J.j10 * ref_vec.x + J.j11 * ref_vec.y)};
}

double piola_divergence(const ElementGeometry::Jacobian &J, double ref_div)
{
   if (!(J.det > 0.0))
   {
      throw Error("piola_divergence: singular or inverted Jacobian");
   }
   return ref_div / J.det;
}

} // namespace poismix
