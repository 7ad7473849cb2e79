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

// Experiment harness: solves the Poisson model problem with the Lagrange
// and the mixed (Raviart-Thomas) discretization on the same mesh and
// reports comparison and reference-error metrics per (order, refinement)
// case. Single runs print a table row; --sweep produces CSV and per-order
// plot data.

#include "poismix/experiment.hpp"
#include "poismix/kernels.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace poismix;

namespace
{

void print_row(const ExperimentRow &r)
{
   std::printf("order=%d refinements=%d h=%.6e\n", r.order, r.refinements,
               r.h);
   std::printf("  %s in %d iterations (residual %.3e)\n",
               r.cg_converged ? "CG converged" : "CG did NOT converge",
               r.cg_iters, r.cg_residual);
   std::printf("  %s in %d iterations (residual %.3e)\n",
               r.minres_converged ? "MINRES converged"
               : "MINRES did NOT converge",
               r.minres_iters, r.minres_residual);
   std::printf("  P comp   = %.6e    U comp   = %.6e\n", r.table_p_comp(),
               r.table_u_comp());
   std::printf("  P err    = %.6e    U err    = %.6e\n", r.table_p_err(),
               r.table_u_err());
   std::printf("  Pmx err  = %.6e    Umx err  = %.6e\n", r.table_pmx_err(),
               r.table_umx_err());
   std::printf("  wall time %.1f ms\n", r.wall_ms);
}

} // namespace

int main(int argc, char **argv)
{
   CLI::App app{"Lagrange vs mixed finite element comparison harness"};

   std::string mesh_file = "data/star.mesh";
   int order = 1;
   int refinements = 0;
   bool sweep = false;
   std::vector<int> orders = {1, 2, 3};
   std::vector<int> max_refs = {2, 2, 1};
   std::string csv_path;
   std::string plot_dir;
   std::string vtk_dir;
   std::string dump_dir;
   std::string projection = "interp";
   bool manufactured = false;
   SolverConfig solver;

   app.add_option("-m,--mesh", mesh_file, "Mesh file to use")
   ->capture_default_str();
   app.add_option("-o,--order", order,
                  "Finite element order (polynomial degree); the mixed "
                  "method runs at order-1")->capture_default_str();
   app.add_option("-r,--refinements", refinements,
                  "Number of uniform refinements")->capture_default_str();
   app.add_flag("--sweep", sweep,
                "Run a full (order x refinement) sweep instead of one case");
   app.add_option("--orders", orders, "Sweep: list of orders")
   ->delimiter(',')->capture_default_str();
   app.add_option("--max-refs", max_refs,
                  "Sweep: max refinements per order (same length as "
                  "--orders)")->delimiter(',')->capture_default_str();
   app.add_option("--csv", csv_path, "Write rows to this CSV file");
   app.add_option("--plot-dir", plot_dir,
                  "Write per-order plot data files to this directory");
   app.add_option("--vtk", vtk_dir,
                  "Export solutions (legacy VTK) to this directory");
   app.add_option("--dump-matrices", dump_dir,
                  "Export assembled operators (MatrixMarket) to this "
                  "directory");
   app.add_option("--projection", projection,
                  "Velocity extraction: interp (nodal) or l2 (projection)")
   ->check(CLI::IsMember({"interp", "l2"}))->capture_default_str();
   app.add_flag("--manufactured", manufactured,
                "Solve the manufactured sin*sin problem (unit-square "
                "meshes) instead of the default one");
   app.add_option("--rtol", solver.rtol, "Solver relative tolerance")
   ->capture_default_str();
   app.add_option("--atol", solver.atol, "Solver absolute tolerance")
   ->capture_default_str();
   app.add_option("--max-iter", solver.max_iter, "Solver iteration limit")
   ->capture_default_str();

   CLI11_PARSE(app, argc, argv);

   RunOptions opts;
   opts.solver = solver;
   opts.manufactured = manufactured;
   opts.extraction = projection == "l2" ? VelocityExtraction::L2Projection
                     : VelocityExtraction::NodalInterpolation;
   opts.vtk_dir = vtk_dir;
   opts.dump_dir = dump_dir;

   try
   {
      const Mesh base = Mesh::load(mesh_file);

      if (!sweep)
      {
         const ExperimentRow row = run_single(base, order, refinements, opts);
         print_row(row);
         if (!csv_path.empty())
         {
            std::ofstream csv(csv_path, std::ios::binary);
            csv << csv_header() << csv_row(row);
         }
         return 0;
      }

      std::ofstream csv;
      if (!csv_path.empty())
      {
         csv.open(csv_path, std::ios::binary);
         if (!csv)
         {
            throw Error("cannot open '" + csv_path + "' for writing");
         }
         csv << csv_header();
         csv.flush();
      }

      const auto rows = run_sweep(base, orders, max_refs, opts,
                                  [&](const ExperimentRow &r)
      {
         print_row(r);
         if (csv.is_open())
         {
            csv << csv_row(r);
            csv.flush(); // keep partial results on abort
         }
      });

      if (!plot_dir.empty()) { emit_plot_data(rows, plot_dir); }
      std::printf("sweep finished: %zu rows (kernels backend: %s)\n",
                  rows.size(), kernels::active_backend());
      return 0;
   }
   catch (const std::exception &err)
   {
      std::fprintf(stderr, "error: %s\n", err.what());
      return 1;
   }
}
