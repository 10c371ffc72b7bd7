#pragma once

namespace landau {

// Applies LANDAU_THREADS (a positive integer) to the OpenMP runtime when set.
// Returns the thread count in effect; 1 without OpenMP.
int configure_threads_from_env();

}  // namespace landau
