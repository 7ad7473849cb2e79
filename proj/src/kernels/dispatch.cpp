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

#include "poismix/kernels.hpp"

#include "poismix/common.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace poismix::kernels
{

namespace
{

struct Backend
{
   const char *name;
   double (*dot)(std::span<const double>, std::span<const double>);
   void (*axpy)(double, std::span<const double>, std::span<double>);
   void (*scale)(double, std::span<double>);
   void (*csr_spmv)(std::span<const int>, std::span<const int>,
                    std::span<const double>, std::span<const double>,
                    std::span<double>);
};

constexpr Backend scalar_backend = {"scalar", detail::dot_scalar,
                                    detail::axpy_scalar, detail::scale_scalar,
                                    detail::csr_spmv_scalar
                                   };

constexpr Backend avx2_backend = {"avx2", detail::dot_avx2, detail::axpy_avx2,
                                  detail::scale_avx2, detail::csr_spmv_avx2
                                 };

const Backend *select_auto()
{
   return detail::avx2_supported() ? &avx2_backend : &scalar_backend;
}

const Backend *select_named(const char *name)
{
   if (std::strcmp(name, "auto") == 0) { return select_auto(); }
   if (std::strcmp(name, "scalar") == 0) { return &scalar_backend; }
   if (std::strcmp(name, "avx2") == 0)
   {
      if (!detail::avx2_supported())
      {
         throw Error("kernels: avx2 backend not supported on this CPU");
      }
      return &avx2_backend;
   }
   throw Error(std::string("kernels: unknown backend '") + name + "'");
}

const Backend *&current()
{
   static const Backend *backend = []
   {
      if (const char *env = std::getenv("POISMIX_KERNELS"))
      {
         return select_named(env);
      }
      return select_auto();
   }();
   return backend;
}

std::mutex backend_mutex;

} // namespace

double dot(std::span<const double> x, std::span<const double> y)
{
   return current()->dot(x, y);
}

void axpy(double a, std::span<const double> x, std::span<double> y)
{
   current()->axpy(a, x, y);
}

void scale(double a, std::span<double> x) { current()->scale(a, x); }

void csr_spmv(std::span<const int> row_offsets, std::span<const int> cols,
              std::span<const double> vals, std::span<const double> x,
              std::span<double> y)
{
   current()->csr_spmv(row_offsets, cols, vals, x, y);
}

const char *active_backend() { return current()->name; }

void force_backend(const char *name)
{
   std::lock_guard<std::mutex> lock(backend_mutex);
   current() = select_named(name);
}

} // namespace poismix::kernels
