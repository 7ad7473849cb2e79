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

#ifndef POISMIX_COMMON_HPP
#define POISMIX_COMMON_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace poismix
{

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

/// Mesh-file syntax error; remembers the 1-based line it occurred on.
class ParseError : public Error
{
public:
   ParseError(int line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) { }

   int line() const { return line_; }

private:
   int line_;
};

class SingularMatrixError : public Error
{
public:
   using Error::Error;
};

struct Vec2
{
   double x = 0.0;
   double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;

} // namespace poismix

#endif
