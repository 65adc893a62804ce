// Copyright 2026 the scheno authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

#include <utility>

namespace scheno {

// workers <= 0 means "use all hardware threads". Without OpenMP everything
// runs on the calling thread.
inline int resolve_workers(int workers) {
#ifdef _OPENMP
  if (workers <= 0) return omp_get_max_threads();
  return workers;
#else
  (void)workers;
  return 1;
#endif
}

// Runs body(i) for i in [0, count). workers == 1 is the serial reference
// path; the parallel path writes results into caller-owned indexed slots, so
// outputs are identical regardless of worker count or scheduling.
// body must not throw across the loop boundary.
template <typename F>
void parallel_for(int count, int workers, F&& body) {
  workers = resolve_workers(workers);
#ifdef _OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
#endif
  for (int i = 0; i < count; ++i) body(i);
}

}  // namespace scheno
