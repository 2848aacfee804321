#include "slab/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slab {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void apply_thread_cap_from_env() {
#ifdef _OPENMP
  const char* value = std::getenv("SLAB_THREADS");
  if (value == nullptr || *value == '\0') return;
  char* end = nullptr;
  const long cap = std::strtol(value, &end, 10);
  if (end == value || *end != '\0' || cap < 1) return;
  if (cap < omp_get_max_threads()) omp_set_num_threads(static_cast<int>(cap));
#endif
}

}  // namespace slab
