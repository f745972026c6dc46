#include "minsel/threading.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace minsel {

int worker_threads() {
  int available = 1;
#ifdef _OPENMP
  available = omp_get_max_threads();
#endif
  const char* env = std::getenv("MINSEL_THREADS");
  if (!env || !*env) return available;
  try {
    const int requested = std::stoi(env);
    if (requested > 0) return requested;
  } catch (const std::exception&) {
    // fall through to auto
  }
  return available;
}

}  // namespace minsel
