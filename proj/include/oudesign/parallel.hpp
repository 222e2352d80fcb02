#pragma once

namespace oudesign::par {

// Effective thread count for internal parallel regions.  Reads
// OU_DESIGN_THREADS on every call; 0 or unset means the OpenMP default.
int thread_cap();

}  // namespace oudesign::par
