#include "landau/threads.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef LANDAU_HAVE_OPENMP
#include <omp.h>
#endif

namespace landau {

int configure_threads_from_env() {
    if (const char* env = std::getenv("LANDAU_THREADS"); env && *env) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n < 1) throw std::invalid_argument(std::string("LANDAU_THREADS: not a positive integer: ") + env);
#ifdef LANDAU_HAVE_OPENMP
        omp_set_num_threads(static_cast<int>(n));
#endif
    }
#ifdef LANDAU_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace landau
