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

// Regenerates the mesh files shipped under data/.

#include "poismix/meshgen.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace poismix;

int main(int argc, char **argv)
{
   CLI::App app{"Mesh file generator"};

   std::string kind = "star";
   std::string out_path;
   int refinements = 0;
   app.add_option("-k,--kind", kind, "Mesh to generate")
   ->check(CLI::IsMember({"star", "unit-square", "unit-square-tri"}))
   ->capture_default_str();
   app.add_option("-r,--refinements", refinements,
                  "Extra uniform refinements")->capture_default_str();
   app.add_option("-o,--out", out_path, "Output file (default stdout)");

   CLI11_PARSE(app, argc, argv);

   try
   {
      Mesh mesh = kind == "star" ? make_star_mesh()
                  : kind == "unit-square" ? make_unit_square_quad()
                  : make_unit_square_triangles();
      for (int r = 0; r < refinements; r++) { mesh = mesh.uniform_refine(); }

      if (out_path.empty())
      {
         mesh.serialize(std::cout);
      }
      else
      {
         std::ofstream out(out_path, std::ios::binary);
         if (!out)
         {
            throw Error("cannot open '" + out_path + "' for writing");
         }
         mesh.serialize(out);
      }
      return 0;
   }
   catch (const std::exception &err)
   {
      std::cerr << "error: " << err.what() << "\n";
      return 1;
   }
}
