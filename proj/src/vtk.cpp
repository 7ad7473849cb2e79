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

#include "poismix/vtk.hpp"

#include <fstream>
#include <ostream>

namespace poismix
{

namespace
{

Vec2 element_center(ElementKind kind)
{
   return kind == ElementKind::Triangle ? Vec2{1.0 / 3.0, 1.0 / 3.0}
          : Vec2{0.5, 0.5};
}

} // namespace

void VtkWriter::add_scalar(const std::string &name, const GridFunction &gf)
{
   if (&gf.space->mesh() != mesh_)
   {
      throw Error("VtkWriter: grid function on a different mesh");
   }
   Field f;
   f.name = name;
   f.vector = false;
   if (gf.space->family() == Family::H1Lagrange)
   {
      // vertex dofs come first and coincide with mesh vertices
      f.point_data = true;
      f.values.assign(gf.coeffs.begin(),
                      gf.coeffs.begin() + mesh_->num_vertices());
   }
   else
   {
      f.point_data = false;
      for (int e = 0; e < mesh_->num_elements(); e++)
      {
         f.values.push_back(
            gf.eval_scalar(e, element_center(mesh_->element(e).kind)));
      }
   }
   fields_.push_back(std::move(f));
}

void VtkWriter::add_vector(const std::string &name, const GridFunction &rt_gf)
{
   if (&rt_gf.space->mesh() != mesh_)
   {
      throw Error("VtkWriter: grid function on a different mesh");
   }
   if (rt_gf.space->family() != Family::RT)
   {
      throw Error("VtkWriter: add_vector expects an RT function");
   }
   Field f;
   f.name = name;
   f.vector = true;
   f.point_data = false;
   for (int e = 0; e < mesh_->num_elements(); e++)
   {
      const Vec2 v =
         rt_gf.eval_vector(e, element_center(mesh_->element(e).kind));
      f.values.push_back(v.x);
      f.values.push_back(v.y);
   }
   fields_.push_back(std::move(f));
}

void VtkWriter::write(std::ostream &out) const
{
   const Mesh &mesh = *mesh_;
   out << "# vtk DataFile Version 3.0\n";
   out << "poismix fields\n";
   out << "ASCII\n";
   out << "DATASET UNSTRUCTURED_GRID\n";
   out << "POINTS " << mesh.num_vertices() << " double\n";
   for (int v = 0; v < mesh.num_vertices(); v++)
   {
      out << mesh.vertex(v).x << ' ' << mesh.vertex(v).y << " 0\n";
   }

   int list_size = 0;
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      list_size += 1 + mesh.element(e).nvertices();
   }
   out << "CELLS " << mesh.num_elements() << ' ' << list_size << '\n';
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      const Element &el = mesh.element(e);
      out << el.nvertices();
      for (int i = 0; i < el.nvertices(); i++) { out << ' ' << el.v[i]; }
      out << '\n';
   }
   out << "CELL_TYPES " << mesh.num_elements() << '\n';
   for (int e = 0; e < mesh.num_elements(); e++)
   {
      out << (mesh.element(e).kind == ElementKind::Triangle ? 5 : 9) << '\n';
   }

   auto dump = [&](bool point_data)
   {
      bool started = false;
      for (const Field &f : fields_)
      {
         if (f.point_data != point_data) { continue; }
         if (!started)
         {
            out << (point_data ? "POINT_DATA " : "CELL_DATA ")
                << (point_data ? mesh.num_vertices() : mesh.num_elements())
                << '\n';
            started = true;
         }
         if (f.vector)
         {
            out << "VECTORS " << f.name << " double\n";
            for (std::size_t i = 0; i < f.values.size(); i += 2)
            {
               out << f.values[i] << ' ' << f.values[i + 1] << " 0\n";
            }
         }
         else
         {
            out << "SCALARS " << f.name << " double 1\n";
            out << "LOOKUP_TABLE default\n";
            for (double v : f.values) { out << v << '\n'; }
         }
      }
   };
   dump(true);
   dump(false);
}

void VtkWriter::write_file(const std::string &path) const
{
   std::ofstream out(path);
   if (!out) { throw Error("cannot open '" + path + "' for writing"); }
   write(out);
}

} // namespace poismix
