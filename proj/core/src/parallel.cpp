/*
   Copyright 2026 The hdgeom Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "hdgeom/parallel.hpp"
#include "hdgeom/common.hpp"

#include <omp.h>

#include <atomic>
#include <cstdint>
#include <exception>

namespace hdgeom {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int threads)
{
   g_threads.store(threads < 0 ? 0 : threads);
}

int thread_count()
{
   const int requested = g_threads.load();
   return requested > 0 ? requested : omp_get_max_threads();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
   // Exceptions cannot cross the parallel region; keep the one from the
   // smallest index so the error reported does not depend on scheduling.
   std::exception_ptr error;
   std::size_t error_index = n;
   const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
   for (std::int64_t i = 0; i < count; ++i)
   {
      try
      {
         body(static_cast<std::size_t>(i));
      }
      catch (...)
      {
#pragma omp critical(hdgeom_parallel_error)
         {
            if (static_cast<std::size_t>(i) < error_index)
            {
               error_index = static_cast<std::size_t>(i);
               error = std::current_exception();
            }
         }
      }
   }
   if (error)
   {
      std::rethrow_exception(error);
   }
}

std::string version()
{
   return HDGEOM_VERSION;
}

} // namespace hdgeom
