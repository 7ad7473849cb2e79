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

#include "poismix/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace poismix
{

namespace
{

// Legendre P_n(x) and derivative via the three-term recurrence.
void legendre_eval(int n, double x, double &p, double &dp)
{
   double p0 = 1.0, p1 = x;
   double d0 = 0.0, d1 = 1.0;
   if (n == 0) { p = p0; dp = d0; return; }
   for (int k = 2; k <= n; k++)
   {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      const double d2 = ((2 * k - 1) * (p1 + x * d1) - (k - 1) * d0) / k;
      p0 = p1; p1 = p2;
      d0 = d1; d1 = d2;
   }
   p = p1;
   dp = d1;
}

} // namespace

QuadRule gauss_legendre_1d(int n)
{
   if (n < 1 || n > 32)
   {
      throw Error("gauss_legendre_1d: point count " + std::to_string(n) +
                  " outside [1,32]");
   }

   QuadRule rule;
   rule.geom = RefGeometry::Segment;
   rule.accuracy = 2 * n - 1;
   rule.points.resize(n);
   rule.weights.resize(n);

   // Newton iteration from the Chebyshev-based initial guess; roots are
   // symmetric so only the lower half is computed.
   for (int i = 0; i < (n + 1) / 2; i++)
   {
      double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double p, dp;
      for (int it = 0; it < 100; it++)
      {
         legendre_eval(n, x, p, dp);
         const double dx = -p / dp;
         x += dx;
         if (std::abs(dx) < 1e-15) { break; }
      }
      legendre_eval(n, x, p, dp);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      rule.points[i] = {x, 0.0};
      rule.weights[i] = w;
      rule.points[n - 1 - i] = {-x, 0.0};
      rule.weights[n - 1 - i] = w;
   }
   if (n % 2 == 1) { rule.points[n / 2].x = 0.0; }
   return rule;
}

namespace
{

// Tensor product on [0,1]^2 with np points per direction.
QuadRule make_quad_rule(int accuracy)
{
   const int np = std::max(1, accuracy / 2 + 1);
   const QuadRule gl = gauss_legendre_1d(np);
   QuadRule rule;
   rule.geom = RefGeometry::Quad;
   rule.accuracy = accuracy;
   rule.points.reserve(np * np);
   rule.weights.reserve(np * np);
   for (int j = 0; j < np; j++)
   {
      const double y = 0.5 * (gl.points[j].x + 1.0);
      const double wy = 0.5 * gl.weights[j];
      for (int i = 0; i < np; i++)
      {
         const double x = 0.5 * (gl.points[i].x + 1.0);
         const double wx = 0.5 * gl.weights[i];
         rule.points.push_back({x, y});
         rule.weights.push_back(wx * wy);
      }
   }
   return rule;
}

// Duffy transform of a tensor rule: (u,v) in [0,1]^2 -> (u, v(1-u)) with
// Jacobian (1-u). A degree-d integrand on the triangle becomes degree d+1
// in u and d in v.
QuadRule make_triangle_rule(int accuracy)
{
   const int nu = std::max(1, (accuracy + 1) / 2 + 1);
   const int nv = std::max(1, accuracy / 2 + 1);
   const QuadRule glu = gauss_legendre_1d(nu);
   const QuadRule glv = gauss_legendre_1d(nv);
   QuadRule rule;
   rule.geom = RefGeometry::Triangle;
   rule.accuracy = accuracy;
   rule.points.reserve(nu * nv);
   rule.weights.reserve(nu * nv);
   for (int j = 0; j < nv; j++)
   {
      const double v = 0.5 * (glv.points[j].x + 1.0);
      const double wv = 0.5 * glv.weights[j];
      for (int i = 0; i < nu; i++)
      {
         const double u = 0.5 * (glu.points[i].x + 1.0);
         const double wu = 0.5 * glu.weights[i];
         rule.points.push_back({u, v * (1.0 - u)});
         rule.weights.push_back(wu * wv * (1.0 - u));
      }
   }
   return rule;
}

QuadRule make_segment_rule(int accuracy)
{
   return gauss_legendre_1d(std::max(1, accuracy / 2 + 1));
}

} // namespace

const QuadRule &rule_for_geometry(RefGeometry geom, int accuracy)
{
   if (accuracy < 0)
   {
      throw Error("rule_for_geometry: negative accuracy");
   }

   static std::map<std::pair<int, int>, QuadRule> cache;
   static std::mutex mutex;
   std::lock_guard<std::mutex> lock(mutex);

   const auto key = std::make_pair((int)geom, accuracy);
   auto it = cache.find(key);
   if (it != cache.end()) { return it->second; }

   QuadRule rule;
   switch (geom)
   {
      case RefGeometry::Segment:  rule = make_segment_rule(accuracy); break;
      case RefGeometry::Quad:     rule = make_quad_rule(accuracy); break;
      case RefGeometry::Triangle: rule = make_triangle_rule(accuracy); break;
      default: throw Error("rule_for_geometry: unsupported geometry");
   }
   rule.accuracy = accuracy;
   return cache.emplace(key, std::move(rule)).first->second;
}

int required_order(int fe_order)
{
   if (fe_order < 0) { throw Error("required_order: negative order"); }
   return std::max(2, 2 * fe_order + 1);
}

} // namespace poismix
