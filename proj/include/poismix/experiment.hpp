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

#ifndef POISMIX_EXPERIMENT_HPP
#define POISMIX_EXPERIMENT_HPP

#include "poismix/postprocess.hpp"
#include "poismix/solvers.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace poismix
{

// One (order, refinements) case of the comparison study. The primal
// discretization runs at order k, the mixed one at k-1; all six metric
// columns are L2 quantities. Raw values and the reference-field norms are
// both kept; the table_* accessors expose the relative (norm-divided)
// values that the result tables use.
struct ExperimentRow
{
   int order = 0;
   int refinements = 0;
   double h = 0.0;

   double p_comp_raw = 0.0;  // || p_mixed - p ||
   double p_err_raw = 0.0;   // || p - p_ref ||
   double pmx_err_raw = 0.0; // || p_mixed - p_ref ||
   double u_comp_raw = 0.0;  // component-combined || u_mixed - u ||
   double u_err_raw = 0.0;   // component-combined || u - u_ref ||
   double umx_err_raw = 0.0; // || u_mixed - u_ref || (vector norm)
   double norm_p = 0.0;      // || p_ref ||
   double norm_u = 0.0;      // || u_ref ||

   int cg_iters = 0;
   int minres_iters = 0;
   bool cg_converged = false;
   bool minres_converged = false;
   double cg_residual = 0.0;
   double minres_residual = 0.0;
   double wall_ms = 0.0;

   double table_p_comp() const { return p_comp_raw / norm_p; }
   double table_p_err() const { return p_err_raw / norm_p; }
   double table_pmx_err() const { return pmx_err_raw / norm_p; }
   double table_u_comp() const { return u_comp_raw / norm_u; }
   double table_u_err() const { return u_err_raw / norm_u; }
   double table_umx_err() const { return umx_err_raw / norm_u; }
};

struct RunOptions
{
   SolverConfig solver;
   bool manufactured = false;
   VelocityExtraction extraction = VelocityExtraction::NodalInterpolation;
   std::string vtk_dir;  // write solution files here when non-empty
   std::string dump_dir; // write MatrixMarket operators here when non-empty
};

/// Full pipeline for one case: refine, build the H1(k) / RT(k-1) / L2(k-1)
/// spaces, assemble and solve both formulations, extract velocities and
/// compute all metrics. Solver non-convergence is recorded in the row, not
/// thrown.
ExperimentRow run_single(const Mesh &base_mesh, int order, int refinements,
                         const RunOptions &opts);
ExperimentRow run_single(const std::string &mesh_path, int order,
                         int refinements, const RunOptions &opts);

/// One row per (order, 0..max_refinements[i]) pair, ordered by order then
/// refinement. The optional callback sees each finished row (the CLI uses
/// it to flush CSV rows incrementally).
std::vector<ExperimentRow>
run_sweep(const Mesh &base_mesh, std::span<const int> orders,
          std::span<const int> max_refinements, const RunOptions &opts,
          const std::function<void(const ExperimentRow &)> &on_row = {});

/// CSV (RFC-4180-style, header + one line per row, 6-digit scientific
/// notation). p_comp/p_err/pmx_err/u_comp carry the table_* (relative)
/// values; u_err/umx_err are raw with the relative variants in the
/// *_normalized columns.
std::string csv_header();
std::string csv_row(const ExperimentRow &row);
std::string to_csv(std::span<const ExperimentRow> rows);

/// Whitespace-separated per-order series files (h + the six table metrics)
/// for log-log plots, one file order<k>.dat per order present in rows.
void emit_plot_data(std::span<const ExperimentRow> rows,
                    const std::string &out_dir);

} // namespace poismix

#endif
