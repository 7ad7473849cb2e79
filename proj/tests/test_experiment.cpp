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
#include "poismix/meshgen.hpp"
#include "poismix/vtk.hpp"

#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace poismix;
using namespace poismix::testing;

TEST_SUITE_BEGIN("experiment");

namespace
{

// CSV body with the wall_ms column removed (it is the only
// non-deterministic column)
std::string strip_wall_time(const std::string &csv)
{
   std::string out;
   std::istringstream in(csv);
   std::string line;
   while (std::getline(in, line))
   {
      const auto pos = line.rfind(',');
      out += line.substr(0, pos);
      out += '\n';
   }
   return out;
}

} // namespace

TEST_CASE("single run on the unit square")
{
   const RunOptions opts;
   const ExperimentRow row = run_single(make_unit_square_quad(), 1, 0, opts);

   CHECK(row.h == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
   CHECK(row.cg_converged);
   CHECK(row.minres_converged);
   for (double v : {row.p_comp_raw, row.p_err_raw, row.pmx_err_raw,
                    row.u_comp_raw, row.u_err_raw, row.umx_err_raw,
                    row.norm_p, row.norm_u
                   })
   {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
   }
   // both methods approximate the same function, while the reference field
   // is a distant fixed function
   CHECK(row.p_comp_raw < row.p_err_raw);

   CHECK_THROWS_AS(run_single(make_unit_square_quad(), 0, 0, opts), Error);
   CHECK_THROWS_AS(run_single(make_unit_square_quad(), 1, -1, opts), Error);
}

TEST_CASE("sweep shape and h halving")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   const std::vector<int> orders = {1, 2};
   const std::vector<int> refs = {2, 1};
   int seen = 0;
   const auto rows = run_sweep(star, orders, refs, {},
                               [&](const ExperimentRow &) { seen++; });
   REQUIRE(rows.size() == 5); // 3 + 2
   CHECK(seen == 5);

   CHECK(rows[0].order == 1);
   CHECK(rows[2].refinements == 2);
   CHECK(rows[3].order == 2);

   // h halves with each refinement
   CHECK(rows[1].h == doctest::Approx(0.5 * rows[0].h).epsilon(1e-12));
   CHECK(rows[2].h == doctest::Approx(0.5 * rows[1].h).epsilon(1e-12));

   // comparison error decreases under refinement
   CHECK(rows[1].table_p_comp() < rows[0].table_p_comp());
   CHECK(rows[2].table_p_comp() < rows[1].table_p_comp());

   CHECK_THROWS_AS(run_sweep(star, std::vector<int>{}, std::vector<int>{},
                             RunOptions{}), Error);
   CHECK_THROWS_AS(run_sweep(star, std::vector<int>{1},
                             std::vector<int>{1, 2}, RunOptions{}), Error);
}

TEST_CASE("CSV layout")
{
   const auto rows = run_sweep(make_unit_square_quad(), std::vector<int>{1},
                               std::vector<int>{1}, {});
   const std::string csv = to_csv(rows);

   std::istringstream in(csv);
   std::string header;
   std::getline(in, header);
   CHECK(header ==
         "order,refinements,h,p_comp,p_err,pmx_err,u_comp,u_err,umx_err,"
         "u_err_normalized,umx_err_normalized,cg_iters,minres_iters,"
         "wall_ms\r");

   std::string line;
   int lines = 0;
   while (std::getline(in, line))
   {
      if (line.empty()) { continue; }
      lines++;
      CHECK(std::count(line.begin(), line.end(), ',') == 13);
   }
   CHECK(lines == 2);
}

TEST_CASE("repeat sweeps produce byte-identical CSV modulo wall time")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   const std::vector<int> orders = {1};
   const std::vector<int> refs = {1};
   const std::string csv1 = to_csv(run_sweep(star, orders, refs, {}));
   const std::string csv2 = to_csv(run_sweep(star, orders, refs, {}));
   CHECK(strip_wall_time(csv1) == strip_wall_time(csv2));
}

TEST_CASE("plot data round trips the CSV values")
{
   const auto rows = run_sweep(make_unit_square_quad(), std::vector<int>{1, 2},
                               std::vector<int>{2, 1}, {});
   const std::string dir = "plot_data_test";
   std::filesystem::remove_all(dir);
   emit_plot_data(rows, dir);

   for (int order : {1, 2})
   {
      std::ifstream in(dir + "/order" + std::to_string(order) + ".dat");
      REQUIRE(in.good());

      std::vector<const ExperimentRow *> expect;
      for (const auto &r : rows)
      {
         if (r.order == order) { expect.push_back(&r); }
      }

      std::string line;
      std::size_t i = 0;
      double prev_h = std::numeric_limits<double>::infinity();
      while (std::getline(in, line))
      {
         if (line.empty() || line[0] == '#') { continue; }
         REQUIRE(i < expect.size());
         std::istringstream ls(line);
         double h, pc, pe, pm, uc, ue, um;
         ls >> h >> pc >> pe >> pm >> uc >> ue >> um;

         // values equal the CSV-formatted ones exactly (same formatter)
         auto same = [](double file_v, double row_v)
         {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6e", row_v);
            return file_v == std::strtod(buf, nullptr);
         };
         CHECK(same(h, expect[i]->h));
         CHECK(same(pc, expect[i]->table_p_comp()));
         CHECK(same(pe, expect[i]->table_p_err()));
         CHECK(same(pm, expect[i]->table_pmx_err()));
         CHECK(same(uc, expect[i]->table_u_comp()));
         CHECK(same(ue, expect[i]->table_u_err()));
         CHECK(same(um, expect[i]->table_umx_err()));

         CHECK(h < prev_h); // strictly decreasing series
         prev_h = h;
         i++;
      }
      CHECK(i == expect.size());
   }
   std::filesystem::remove_all(dir);

   CHECK_THROWS_AS(emit_plot_data({}, dir), Error);
}

TEST_CASE("a fatal case aborts the sweep after flushing earlier rows")
{
   const Mesh star = Mesh::load(data_path("star.mesh"));
   std::vector<ExperimentRow> seen;
   const std::vector<int> orders = {1, 99}; // 99 is out of supported range
   const std::vector<int> refs = {1, 0};
   CHECK_THROWS_AS(run_sweep(star, orders, refs, {},
                             [&](const ExperimentRow &r)
   {
      seen.push_back(r);
   }), Error);
   CHECK(seen.size() == 2); // order-1 rows were delivered before the abort
   CHECK(seen[0].order == 1);
   CHECK(seen[1].refinements == 1);
}

TEST_CASE("manufactured mode errors shrink under refinement")
{
   RunOptions opts;
   opts.manufactured = true;
   opts.solver.rtol = 1e-10;
   const Mesh square = make_unit_square_quad();
   const ExperimentRow coarse = run_single(square, 1, 1, opts);
   const ExperimentRow fine = run_single(square, 1, 3, opts);
   CHECK(fine.p_err_raw < coarse.p_err_raw);
   CHECK(fine.umx_err_raw < coarse.umx_err_raw);
   // roughly second order in h for the primal pressure
   CHECK(fine.p_err_raw < 0.15 * coarse.p_err_raw);
}

TEST_CASE("vtk export writes a well-formed file")
{
   RunOptions opts;
   opts.vtk_dir = "vtk_test_dir";
   std::filesystem::remove_all(opts.vtk_dir);
   run_single(make_unit_square_quad(), 1, 1, opts);

   std::ifstream in(opts.vtk_dir + "/case_o1_r1.vtk");
   REQUIRE(in.good());
   std::string first;
   std::getline(in, first);
   CHECK(first == "# vtk DataFile Version 3.0");
   std::stringstream all;
   all << in.rdbuf();
   const std::string body = all.str();
   CHECK(body.find("POINTS 9 double") != std::string::npos);
   CHECK(body.find("CELL_TYPES 4") != std::string::npos);
   CHECK(body.find("SCALARS pressure double 1") != std::string::npos);
   CHECK(body.find("VECTORS velocity_mixed double") != std::string::npos);
   std::filesystem::remove_all(opts.vtk_dir);
}

TEST_CASE("matrix dump writes MatrixMarket files")
{
   RunOptions opts;
   opts.dump_dir = "mtx_test_dir";
   std::filesystem::remove_all(opts.dump_dir);
   run_single(make_unit_square_quad(), 1, 0, opts);
   for (const char *name : {"A_o1_r0.mtx", "M_o1_r0.mtx", "B_o1_r0.mtx"})
   {
      std::ifstream in(opts.dump_dir + "/" + std::string(name));
      REQUIRE(in.good());
      std::string header;
      std::getline(in, header);
      CHECK(header == "%%MatrixMarket matrix coordinate real general");
   }
   std::filesystem::remove_all(opts.dump_dir);
}

TEST_SUITE_END();
