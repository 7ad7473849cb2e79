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

#include "poismix/assembly.hpp"

#include "poismix/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace poismix
{

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix SparseMatrix::from_triplets(int nrows, int ncols,
                                         std::vector<Triplet> triplets)
{
   SparseMatrix A;
   A.nrows_ = nrows;
   A.ncols_ = ncols;

   // Stable sort keeps the insertion order of duplicates, so the summation
   // order below is reproducible.
   std::stable_sort(triplets.begin(), triplets.end(),
                    [](const Triplet &a, const Triplet &b)
   {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
   });

   A.row_offsets_.assign(nrows + 1, 0);
   for (std::size_t t = 0; t < triplets.size();)
   {
      const int r = triplets[t].row;
      const int c = triplets[t].col;
      if (r < 0 || r >= nrows || c < 0 || c >= ncols)
      {
         throw Error("from_triplets: index out of range");
      }
      double v = 0.0;
      while (t < triplets.size() && triplets[t].row == r &&
             triplets[t].col == c)
      {
         v += triplets[t].value;
         t++;
      }
      A.col_indices_.push_back(c);
      A.values_.push_back(v);
      A.row_offsets_[r + 1]++;
   }
   for (int r = 0; r < nrows; r++)
   {
      A.row_offsets_[r + 1] += A.row_offsets_[r];
   }
   return A;
}

double SparseMatrix::operator()(int i, int j) const
{
   for (int t = row_offsets_[i]; t < row_offsets_[i + 1]; t++)
   {
      if (col_indices_[t] == j) { return values_[t]; }
   }
   return 0.0;
}

void SparseMatrix::mult(std::span<const double> x, std::span<double> y) const
{
   kernels::csr_spmv(row_offsets_, col_indices_, values_, x, y);
}

void SparseMatrix::mult_transpose(std::span<const double> x,
                                  std::span<double> y) const
{
   std::fill(y.begin(), y.end(), 0.0);
   for (int r = 0; r < nrows_; r++)
   {
      for (int t = row_offsets_[r]; t < row_offsets_[r + 1]; t++)
      {
         y[col_indices_[t]] += values_[t] * x[r];
      }
   }
}

SparseMatrix SparseMatrix::transpose() const
{
   std::vector<Triplet> trip;
   trip.reserve(values_.size());
   for (int r = 0; r < nrows_; r++)
   {
      for (int t = row_offsets_[r]; t < row_offsets_[r + 1]; t++)
      {
         trip.push_back({col_indices_[t], r, values_[t]});
      }
   }
   return from_triplets(ncols_, nrows_, std::move(trip));
}

std::vector<double> SparseMatrix::dense() const
{
   std::vector<double> d((std::size_t)nrows_ * ncols_, 0.0);
   for (int r = 0; r < nrows_; r++)
   {
      for (int t = row_offsets_[r]; t < row_offsets_[r + 1]; t++)
      {
         d[(std::size_t)r * ncols_ + col_indices_[t]] += values_[t];
      }
   }
   return d;
}

double SparseMatrix::max_abs() const
{
   double m = 0.0;
   for (double v : values_) { m = std::max(m, std::abs(v)); }
   return m;
}

double SparseMatrix::symmetry_error() const
{
   if (nrows_ != ncols_) { throw Error("symmetry_error: non-square matrix"); }
   const SparseMatrix At = transpose();
   double err = 0.0;
   for (int r = 0; r < nrows_; r++)
   {
      for (int t = row_offsets_[r]; t < row_offsets_[r + 1]; t++)
      {
         err = std::max(err, std::abs(values_[t] - At(r, col_indices_[t])));
      }
      for (int t = At.row_offsets_[r]; t < At.row_offsets_[r + 1]; t++)
      {
         err = std::max(err,
                        std::abs(At.values_[t] - (*this)(r, At.col_indices_[t])));
      }
   }
   return err;
}

void SparseMatrix::zero_row(int i)
{
   for (int t = row_offsets_[i]; t < row_offsets_[i + 1]; t++)
   {
      values_[t] = 0.0;
   }
}

void SparseMatrix::zero_col(int j)
{
   for (int r = 0; r < nrows_; r++)
   {
      for (int t = row_offsets_[r]; t < row_offsets_[r + 1]; t++)
      {
         if (col_indices_[t] == j) { values_[t] = 0.0; }
      }
   }
}

void SparseMatrix::set_diag(int i, double v)
{
   for (int t = row_offsets_[i]; t < row_offsets_[i + 1]; t++)
   {
      if (col_indices_[t] == i)
      {
         values_[t] = v;
         return;
      }
   }
   throw Error("set_diag: diagonal entry not in sparsity pattern");
}

void write_matrix_market(std::ostream &out, const SparseMatrix &A)
{
   out << "%%MatrixMarket matrix coordinate real general\n";
   out << A.rows() << ' ' << A.cols() << ' ' << A.nnz() << '\n';
   char buf[64];
   const auto offs = A.row_offsets();
   const auto cols = A.col_indices();
   const auto vals = A.values();
   for (int r = 0; r < A.rows(); r++)
   {
      for (int t = offs[r]; t < offs[r + 1]; t++)
      {
         std::snprintf(buf, sizeof(buf), "%.17g", vals[t]);
         out << (r + 1) << ' ' << (cols[t] + 1) << ' ' << buf << '\n';
      }
   }
}

// ---------------------------------------------------------------------------
// ProblemSpec

ProblemSpec ProblemSpec::poisson_unit()
{
   ProblemSpec ps;
   ps.k_coeff = [](Vec2) { return 1.0; };
   ps.f = [](Vec2) { return Vec2{0.0, 0.0}; };
   ps.g = [](Vec2) { return -1.0; };
   ps.p0 = [](Vec2) { return 0.0; };
   ps.rhs_lagrange = [](Vec2) { return 1.0; };
   return ps;
}

ProblemSpec ProblemSpec::manufactured()
{
   ProblemSpec ps;
   ps.k_coeff = [](Vec2) { return 1.0; };
   ps.f = [](Vec2) { return Vec2{0.0, 0.0}; };
   ps.g = [](Vec2 p)
   {
      return -2.0 * M_PI * M_PI * std::sin(M_PI * p.x) * std::sin(M_PI * p.y);
   };
   ps.p0 = [](Vec2) { return 0.0; };
   ps.rhs_lagrange = [](Vec2 p)
   {
      return 2.0 * M_PI * M_PI * std::sin(M_PI * p.x) * std::sin(M_PI * p.y);
   };
   return ps;
}

// ---------------------------------------------------------------------------
// assembly loops

namespace
{

struct ElementContext
{
   std::vector<int> ids;
   std::vector<double> signs;
};

void scatter(std::vector<SparseMatrix::Triplet> &trip,
             const ElementContext &rows, const ElementContext &cols,
             const std::vector<double> &ke)
{
   const int nr = (int)rows.ids.size();
   const int nc = (int)cols.ids.size();
   for (int a = 0; a < nr; a++)
   {
      for (int b = 0; b < nc; b++)
      {
         trip.push_back({rows.ids[a], cols.ids[b],
                         rows.signs[a] * cols.signs[b] * ke[a * nc + b]});
      }
   }
}

} // namespace

SparseMatrix assemble_diffusion(const FESpace &space, const ScalarField &coeff)
{
   if (space.family() != Family::H1Lagrange)
   {
      throw Error("assemble_diffusion: H1 space required");
   }
   const Mesh &mesh = space.mesh();
   const int accuracy = required_order(space.order());

   std::vector<SparseMatrix::Triplet> trip;
   ElementContext ctx;
   std::vector<double> vals, ke;
   std::vector<Vec2> grads;

   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const ReferenceElement &re = space.ref_elem(mesh.element(e).kind);
      const QuadRule &rule =
         rule_for_geometry(re.geometry(), accuracy);
      const ElementGeometry geom = mesh.geometry(e);
      const int n = re.ndofs();
      space.element_dofs(e, ctx.ids, ctx.signs);
      vals.resize(n);
      grads.resize(n);
      ke.assign(n * n, 0.0);

      for (int q = 0; q < rule.size(); q++)
      {
         const Vec2 rp = rule.points[q];
         const auto J = geom.checked_jacobian(rp);
         re.eval_gradients(rp, vals, grads);
         const double c = coeff(geom.map(rp));
         const double w = rule.weights[q] * J.det * c;
         const double inv = 1.0 / J.det;
         // physical gradients via J^{-T}
         for (int a = 0; a < n; a++)
         {
            grads[a] = {inv * (J.j11 * grads[a].x - J.j10 * grads[a].y),
                        inv * (-J.j01 * grads[a].x + J.j00 * grads[a].y)
                       };
         }
         for (int a = 0; a < n; a++)
         {
            for (int b = 0; b < n; b++)
            {
               ke[a * n + b] += w * dot(grads[a], grads[b]);
            }
         }
      }
      scatter(trip, ctx, ctx, ke);
   }
   return SparseMatrix::from_triplets(space.ndofs(), space.ndofs(),
                                      std::move(trip));
}

SparseMatrix assemble_vector_mass(const FESpace &space,
                                  const ScalarField &coeff)
{
   if (space.family() != Family::RT)
   {
      throw Error("assemble_vector_mass: RT space required");
   }
   const Mesh &mesh = space.mesh();
   const int accuracy = required_order(space.order() + 1);

   std::vector<SparseMatrix::Triplet> trip;
   ElementContext ctx;
   std::vector<Vec2> vals;
   std::vector<double> divs, ke;

   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const ReferenceElement &re = space.ref_elem(mesh.element(e).kind);
      const QuadRule &rule = rule_for_geometry(re.geometry(), accuracy);
      const ElementGeometry geom = mesh.geometry(e);
      const int n = re.ndofs();
      space.element_dofs(e, ctx.ids, ctx.signs);
      vals.resize(n);
      divs.resize(n);
      ke.assign(n * n, 0.0);

      for (int q = 0; q < rule.size(); q++)
      {
         const Vec2 rp = rule.points[q];
         const auto J = geom.checked_jacobian(rp);
         re.eval_vector(rp, vals, divs);
         for (int a = 0; a < n; a++) { vals[a] = piola_value(J, vals[a]); }
         const double w =
            rule.weights[q] * J.det * coeff(geom.map(rp));
         for (int a = 0; a < n; a++)
         {
            for (int b = 0; b < n; b++)
            {
               ke[a * n + b] += w * dot(vals[a], vals[b]);
            }
         }
      }
      scatter(trip, ctx, ctx, ke);
   }
   return SparseMatrix::from_triplets(space.ndofs(), space.ndofs(),
                                      std::move(trip));
}

SparseMatrix assemble_divergence(const FESpace &rt_space,
                                 const FESpace &l2_space)
{
   if (rt_space.family() != Family::RT ||
       l2_space.family() != Family::L2Disc)
   {
      throw Error("assemble_divergence: expects (RT, L2) spaces");
   }
   if (&rt_space.mesh() != &l2_space.mesh())
   {
      throw Error("assemble_divergence: spaces live on different meshes");
   }
   if (rt_space.order() != l2_space.order())
   {
      throw Error("assemble_divergence: RT and L2 orders must match");
   }
   const Mesh &mesh = rt_space.mesh();
   const int accuracy = required_order(rt_space.order() + 1);

   std::vector<SparseMatrix::Triplet> trip;
   ElementContext rt_ctx, l2_ctx;
   std::vector<Vec2> vals;
   std::vector<double> divs, psi, ke;

   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const ReferenceElement &rt = rt_space.ref_elem(mesh.element(e).kind);
      const ReferenceElement &l2 = l2_space.ref_elem(mesh.element(e).kind);
      const QuadRule &rule = rule_for_geometry(rt.geometry(), accuracy);
      const int nu = rt.ndofs();
      const int np = l2.ndofs();
      rt_space.element_dofs(e, rt_ctx.ids, rt_ctx.signs);
      l2_space.element_dofs(e, l2_ctx.ids, l2_ctx.signs);
      vals.resize(nu);
      divs.resize(nu);
      psi.resize(np);
      ke.assign(np * nu, 0.0);

      for (int q = 0; q < rule.size(); q++)
      {
         const Vec2 rp = rule.points[q];
         rt.eval_vector(rp, vals, divs);
         l2.eval(rp, psi);
         // detJ of the Piola divergence cancels against the volume element
         const double w = rule.weights[q];
         for (int l = 0; l < np; l++)
         {
            for (int i = 0; i < nu; i++)
            {
               ke[l * nu + i] -= w * psi[l] * divs[i];
            }
         }
      }
      scatter(trip, l2_ctx, rt_ctx, ke);
   }
   return SparseMatrix::from_triplets(l2_space.ndofs(), rt_space.ndofs(),
                                      std::move(trip));
}

std::vector<double> assemble_load(const FESpace &space,
                                  const ScalarField &field)
{
   if (space.family() == Family::RT)
   {
      throw Error("assemble_load: scalar-valued space required");
   }
   const Mesh &mesh = space.mesh();
   const int accuracy = required_order(
                           space.order() + (space.family() == Family::L2Disc ? 1 : 0));

   std::vector<double> b(space.ndofs(), 0.0);
   ElementContext ctx;
   std::vector<double> vals;

   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const ReferenceElement &re = space.ref_elem(mesh.element(e).kind);
      const QuadRule &rule = rule_for_geometry(re.geometry(), accuracy);
      const ElementGeometry geom = mesh.geometry(e);
      const int n = re.ndofs();
      space.element_dofs(e, ctx.ids, ctx.signs);
      vals.resize(n);

      for (int q = 0; q < rule.size(); q++)
      {
         const Vec2 rp = rule.points[q];
         const auto J = geom.checked_jacobian(rp);
         re.eval(rp, vals);
         const double w = rule.weights[q] * J.det * field(geom.map(rp));
         for (int a = 0; a < n; a++)
         {
            b[ctx.ids[a]] += ctx.signs[a] * w * vals[a];
         }
      }
   }
   return b;
}

std::vector<double> assemble_boundary_flux(const FESpace &rt_space,
                                           const ScalarField &p0)
{
   if (rt_space.family() != Family::RT)
   {
      throw Error("assemble_boundary_flux: RT space required");
   }
   const Mesh &mesh = rt_space.mesh();
   const int m = rt_space.order();
   const QuadRule &seg =
      rule_for_geometry(RefGeometry::Segment, required_order(m + 1) + 2);

   // Owning element and local edge for each boundary edge.
   std::vector<std::pair<int, int>> owner(mesh.num_edges(), {-1, -1});
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      for (int le = 0; le < mesh.element(e).nedges(); le++)
      {
         const int edge = mesh.element_edge(e, le);
         if (mesh.edge_on_boundary(edge)) { owner[edge] = {e, le}; }
      }
   }

   std::vector<double> rhs(rt_space.ndofs(), 0.0);
   ElementContext ctx;
   std::vector<Vec2> vals;
   std::vector<double> divs;

   for (int be = 0; be < mesh.num_boundary_edges(); be++)
   {
      const BoundaryEdge &bedge = mesh.boundary_edge(be);
      // locate the mesh edge
      int edge_id = -1;
      for (int ed = 0; ed < mesh.num_edges(); ed++)
      {
         const EdgeInfo &ei = mesh.edge(ed);
         if (std::minmax(bedge.v[0], bedge.v[1]) ==
             std::minmax(ei.v0, ei.v1)) { edge_id = ed; break; }
      }
      const auto [e, le] = owner[edge_id];
      const Element &el = mesh.element(e);
      const ReferenceElement &re = rt_space.ref_elem(el.kind);
      const ElementGeometry geom = mesh.geometry(e);
      const int n = re.ndofs();
      rt_space.element_dofs(e, ctx.ids, ctx.signs);
      vals.resize(n);
      divs.resize(n);

      // reference end points of the local edge (counterclockwise)
      const auto lv = local_edge_vertices(el.kind, le);
      const Vec2 quad_corners[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      const Vec2 tri_corners[3] = {{0, 0}, {1, 0}, {0, 1}};
      const Vec2 *corners =
         el.kind == ElementKind::Triangle ? tri_corners : quad_corners;
      const Vec2 ra = corners[lv[0]];
      const Vec2 rb = corners[lv[1]];

      for (int q = 0; q < seg.size(); q++)
      {
         const double t = 0.5 * (seg.points[q].x + 1.0);
         const double w = 0.5 * seg.weights[q];
         const Vec2 rp = {ra.x + t * (rb.x - ra.x), ra.y + t * (rb.y - ra.y)};
         const auto J = geom.checked_jacobian(rp);
         re.eval_vector(rp, vals, divs);

         // physical tangent along the local direction; outward normal is
         // its clockwise rotation for a counterclockwise element
         const Vec2 tangent = {J.j00 * (rb.x - ra.x) + J.j01 * (rb.y - ra.y),
                               J.j10 * (rb.x - ra.x) + J.j11 * (rb.y - ra.y)
                              };
         const double ds = norm(tangent);
         const Vec2 n_out = {tangent.y / ds, -tangent.x / ds};
         const double pw = p0(geom.map(rp));
         for (int a = 0; a < n; a++)
         {
            const Vec2 phys = piola_value(J, vals[a]);
            rhs[ctx.ids[a]] -=
               ctx.signs[a] * w * ds * pw * dot(phys, n_out);
         }
      }
   }
   return rhs;
}

void apply_essential_bc(SparseMatrix &A, std::vector<double> &b,
                        std::span<const int> dofs)
{
   if (A.rows() != A.cols() || (int)b.size() != A.rows())
   {
      throw Error("apply_essential_bc: dimension mismatch");
   }
   for (int dof : dofs)
   {
      if (dof < 0 || dof >= A.rows())
      {
         throw Error("apply_essential_bc: dof out of range");
      }
      A.zero_row(dof);
      A.zero_col(dof);
      A.set_diag(dof, 1.0);
      b[dof] = 0.0;
   }
}

// ---------------------------------------------------------------------------
// BlockSystem

void BlockSystem::apply(std::span<const double> x, std::span<double> y) const
{
   const int nu = offsets[1];
   const int np = offsets[2] - nu;
   static thread_local std::vector<double> tmp;
   tmp.resize(nu);

   M.mult(x.subspan(0, nu), y.subspan(0, nu));
   Bt.mult(x.subspan(nu, np), tmp);
   kernels::axpy(1.0, tmp, y.subspan(0, nu));
   B.mult(x.subspan(0, nu), y.subspan(nu, np));
}

BlockSystem build_block_system(SparseMatrix M, SparseMatrix B,
                               std::vector<double> rhs_u,
                               std::vector<double> rhs_p)
{
   const int nu = M.rows();
   const int np = B.rows();
   if (M.cols() != nu || B.cols() != nu || (int)rhs_u.size() != nu ||
       (int)rhs_p.size() != np)
   {
      throw Error("build_block_system: inconsistent dimensions");
   }
   BlockSystem sys;
   sys.Bt = B.transpose();
   sys.M = std::move(M);
   sys.B = std::move(B);
   sys.offsets = {0, nu, nu + np};
   sys.rhs = std::move(rhs_u);
   sys.rhs.insert(sys.rhs.end(), rhs_p.begin(), rhs_p.end());
   return sys;
}

} // namespace poismix
