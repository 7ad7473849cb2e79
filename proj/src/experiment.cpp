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

#include "poismix/experiment.hpp"

#include "poismix/vtk.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace poismix
{

namespace
{

std::string fmt_e(double v)
{
   char buf[32];
   std::snprintf(buf, sizeof(buf), "%.6e", v);
   return buf;
}

void dump_operator(const std::string &dir, const std::string &name,
                   int order, int refinements, const SparseMatrix &A)
{
   std::filesystem::create_directories(dir);
   char base[96];
   std::snprintf(base, sizeof(base), "%s_o%d_r%d.mtx", name.c_str(), order,
                 refinements);
   std::ofstream out(std::filesystem::path(dir) / base);
   if (!out) { throw Error("cannot write matrix export in '" + dir + "'"); }
   write_matrix_market(out, A);
}

} // namespace

ExperimentRow run_single(const std::string &mesh_path, int order,
                         int refinements, const RunOptions &opts)
{
   return run_single(Mesh::load(mesh_path), order, refinements, opts);
}

ExperimentRow run_single(const Mesh &base_mesh, int order, int refinements,
                         const RunOptions &opts)
{
   if (order < 1) { throw Error("run_single: order must be >= 1"); }
   if (refinements < 0) { throw Error("run_single: negative refinements"); }

   const auto t0 = std::chrono::steady_clock::now();

   Mesh mesh = base_mesh;
   for (int r = 0; r < refinements; r++) { mesh = mesh.uniform_refine(); }

   ExperimentRow row;
   row.order = order;
   row.refinements = refinements;
   row.h = mesh.h_max();

   const ProblemSpec ps = opts.manufactured ? ProblemSpec::manufactured()
                          : ProblemSpec::poisson_unit();
   const ReferenceFields rf = opts.manufactured ? manufactured_reference()
                              : exp_sine_reference();

   const FESpace h1(mesh, Family::H1Lagrange, order);
   const FESpace rt(mesh, Family::RT, order - 1);
   const FESpace l2(mesh, Family::L2Disc, order - 1);

   // primal (Lagrange) path
   SparseMatrix A = assemble_diffusion(h1, ps.k_coeff);
   std::vector<double> b = assemble_load(h1, ps.rhs_lagrange);
   const std::vector<int> ess = h1.essential_boundary_dofs();
   apply_essential_bc(A, b, ess);

   std::vector<double> xp;
   const SolveReport cg = cg_solve(LinearOperator::from(A), b, xp,
                                   opts.solver);
   row.cg_iters = cg.iterations;
   row.cg_converged = cg.converged;
   row.cg_residual = cg.final_residual;
   GridFunction p(h1, std::move(xp));

   // mixed (saddle point) path
   SparseMatrix M = assemble_vector_mass(rt, ps.k_coeff);
   SparseMatrix B = assemble_divergence(rt, l2);
   std::vector<double> rhs_u = assemble_boundary_flux(rt, ps.p0);
   std::vector<double> rhs_p = assemble_load(l2, ps.g);

   if (!opts.dump_dir.empty())
   {
      dump_operator(opts.dump_dir, "A", order, refinements, A);
      dump_operator(opts.dump_dir, "M", order, refinements, M);
      dump_operator(opts.dump_dir, "B", order, refinements, B);
   }

   const BlockSystem D = build_block_system(std::move(M), std::move(B),
                                            std::move(rhs_u),
                                            std::move(rhs_p));
   std::vector<double> xm;
   const SolveReport mr = minres_solve(LinearOperator::from(D), D.rhs, xm,
                                       opts.solver);
   row.minres_iters = mr.iterations;
   row.minres_converged = mr.converged;
   row.minres_residual = mr.final_residual;

   const int nu = D.offsets[1];
   GridFunction u_mixed(rt, {xm.begin(), xm.begin() + nu});
   GridFunction p_mixed(l2, {xm.begin() + nu, xm.end()});

   // velocities: u = -grad p for the primal solution, component extraction
   // for the mixed one
   auto [ux, uy] = recover_gradient(p, l2, opts.extraction);
   auto [uxm, uym] = project_rt_components(u_mixed, l2, opts.extraction);

   const int q = required_order(order);
   row.norm_p = field_l2_norm(mesh, rf.p, q);
   row.norm_u = field_l2_norm(mesh, rf.u, q);

   row.p_err_raw = compute_l2_error(p, rf.p, q);
   row.pmx_err_raw = compute_l2_error(p_mixed, rf.p, q);
   row.umx_err_raw = compute_l2_error(u_mixed, rf.u, q);
   row.u_err_raw = combine_velocity_error(compute_l2_error(ux, rf.ux, q),
                                          compute_l2_error(uy, rf.uy, q));
   row.p_comp_raw = comparison_error(p_mixed, p);
   row.u_comp_raw = combine_velocity_error(comparison_error(uxm, ux),
                                           comparison_error(uym, uy));

   if (!opts.vtk_dir.empty())
   {
      std::filesystem::create_directories(opts.vtk_dir);
      char name[64];
      std::snprintf(name, sizeof(name), "case_o%d_r%d.vtk", order,
                    refinements);
      VtkWriter vtk(mesh);
      vtk.add_scalar("pressure", p);
      vtk.add_scalar("pressure_mixed", p_mixed);
      vtk.add_vector("velocity_mixed", u_mixed);
      vtk.add_scalar("velocity_x", ux);
      vtk.add_scalar("velocity_y", uy);
      vtk.write_file((std::filesystem::path(opts.vtk_dir) / name).string());
   }

   const auto t1 = std::chrono::steady_clock::now();
   row.wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
   return row;
}

std::vector<ExperimentRow>
run_sweep(const Mesh &base_mesh, std::span<const int> orders,
          std::span<const int> max_refinements, const RunOptions &opts,
          const std::function<void(const ExperimentRow &)> &on_row)
{
   if (orders.empty() || orders.size() != max_refinements.size())
   {
      throw Error("run_sweep: orders and max_refinements must be non-empty "
                  "lists of equal length");
   }
   std::vector<ExperimentRow> rows;
   for (std::size_t i = 0; i < orders.size(); i++)
   {
      for (int r = 0; r <= max_refinements[i]; r++)
      {
         rows.push_back(run_single(base_mesh, orders[i], r, opts));
         if (on_row) { on_row(rows.back()); }
      }
   }
   return rows;
}

std::string csv_header()
{
   return "order,refinements,h,p_comp,p_err,pmx_err,u_comp,u_err,umx_err,"
          "u_err_normalized,umx_err_normalized,cg_iters,minres_iters,"
          "wall_ms\r\n";
}

std::string csv_row(const ExperimentRow &r)
{
   std::string s;
   s += std::to_string(r.order);
   s += ',';
   s += std::to_string(r.refinements);
   s += ',';
   s += fmt_e(r.h);
   s += ',';
   s += fmt_e(r.table_p_comp());
   s += ',';
   s += fmt_e(r.table_p_err());
   s += ',';
   s += fmt_e(r.table_pmx_err());
   s += ',';
   s += fmt_e(r.table_u_comp());
   s += ',';
   s += fmt_e(r.u_err_raw);
   s += ',';
   s += fmt_e(r.umx_err_raw);
   s += ',';
   s += fmt_e(r.table_u_err());
   s += ',';
   s += fmt_e(r.table_umx_err());
   s += ',';
   s += std::to_string(r.cg_iters);
   s += ',';
   s += std::to_string(r.minres_iters);
   s += ',';
   char buf[32];
   std::snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
   s += buf;
   s += "\r\n";
   return s;
}

std::string to_csv(std::span<const ExperimentRow> rows)
{
   std::string s = csv_header();
   for (const ExperimentRow &r : rows) { s += csv_row(r); }
   return s;
}

void emit_plot_data(std::span<const ExperimentRow> rows,
                    const std::string &out_dir)
{
   if (rows.empty()) { throw Error("emit_plot_data: no rows"); }
   std::filesystem::create_directories(out_dir);

   std::map<int, std::vector<const ExperimentRow *>> by_order;
   for (const ExperimentRow &r : rows) { by_order[r.order].push_back(&r); }

   for (const auto &[order, series] : by_order)
   {
      char name[48];
      std::snprintf(name, sizeof(name), "order%d.dat", order);
      std::ofstream out(std::filesystem::path(out_dir) / name);
      if (!out)
      {
         throw Error("cannot write plot data in '" + out_dir + "'");
      }
      out << "# columns: h p_comp p_err pmx_err u_comp u_err umx_err\n";
      out << "# order " << order << ", one row per refinement level\n";
      for (const ExperimentRow *r : series)
      {
         out << fmt_e(r->h) << ' ' << fmt_e(r->table_p_comp()) << ' '
             << fmt_e(r->table_p_err()) << ' ' << fmt_e(r->table_pmx_err())
             << ' ' << fmt_e(r->table_u_comp()) << ' '
             << fmt_e(r->table_u_err()) << ' ' << fmt_e(r->table_umx_err())
             << '\n';
      }
   }
}

} // namespace poismix
