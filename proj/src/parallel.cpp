#include "oudesign/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oudesign::par {

int thread_cap() {
#ifdef _OPENMP
  int def = omp_get_max_threads();
#else
  int def = 1;
#endif
  const char* env = std::getenv("OU_DESIGN_THREADS");
  if (env == nullptr || *env == '\0') return def;
  try {
    const int v = std::stoi(env);
    return v <= 0 ? def : v;
  } catch (...) {
    return def;
  }
}

}  // namespace oudesign::par
