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

#ifndef POISMIX_MESHGEN_HPP
#define POISMIX_MESHGEN_HPP

#include "poismix/mesh.hpp"

namespace poismix
{

/// The unit square [0,1]^2 as one quadrilateral.
Mesh make_unit_square_quad();

/// The unit square split into two triangles along the (0,0)-(1,1) diagonal.
Mesh make_unit_square_triangles();

/// Five-pointed star composed of 20 rhombi (the study mesh): five unit-side
/// rhombi fanned around the origin -- concave corners on the unit circle,
/// tips at radius 2cos(36 deg) and angles 36+72k degrees -- then refined
/// uniformly once. 31 vertices, 20 elements, 20 boundary edges.
Mesh make_star_mesh();

} // namespace poismix

#endif
