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

#ifndef POISMIX_QUADRATURE_HPP
#define POISMIX_QUADRATURE_HPP

#include "poismix/common.hpp"

#include <vector>

namespace poismix
{

// Reference domains used throughout the project:
//   Segment  : [-1,1]            (measure 2)
//   Triangle : {x,y >= 0, x+y <= 1}  (measure 1/2)
//   Quad     : [0,1] x [0,1]     (measure 1)
enum class RefGeometry { Segment, Triangle, Quad };

struct QuadRule
{
   RefGeometry geom;
   int accuracy;             // exact for polynomials up to this degree
   std::vector<Vec2> points; // segment rules use .x only
   std::vector<double> weights;

   int size() const { return (int)points.size(); }
};

/// n-point Gauss-Legendre rule on [-1,1], exact for degree <= 2n-1.
/// Valid for 1 <= n <= 32.
QuadRule gauss_legendre_1d(int n);

/// Smallest cached rule of the family used project-wide that integrates
/// polynomials of total degree <= accuracy exactly on the given reference
/// geometry. Quad rules are Gauss tensor products; triangle rules come from
/// the Duffy (collapsed coordinate) transform of a tensor rule.
const QuadRule &rule_for_geometry(RefGeometry geom, int accuracy);

/// Quadrature accuracy used for error integrals at finite element order k:
/// max(2, 2k+1).
int required_order(int fe_order);

} // namespace poismix

#endif
