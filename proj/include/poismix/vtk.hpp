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

#ifndef POISMIX_VTK_HPP
#define POISMIX_VTK_HPP

#include "poismix/postprocess.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace poismix
{

// Legacy ASCII VTK export for external viewers. H1 functions are written
// as point data (vertex values); L2 and RT functions as cell data
// (element-center values).
class VtkWriter
{
public:
   explicit VtkWriter(const Mesh &mesh) : mesh_(&mesh) { }

   void add_scalar(const std::string &name, const GridFunction &gf);
   void add_vector(const std::string &name, const GridFunction &rt_gf);

   void write(std::ostream &out) const;
   void write_file(const std::string &path) const;

private:
   struct Field
   {
      std::string name;
      bool point_data;
      bool vector;
      std::vector<double> values; // 1 or 2 per entity
   };

   const Mesh *mesh_;
   std::vector<Field> fields_;
};

} // namespace poismix

#endif
