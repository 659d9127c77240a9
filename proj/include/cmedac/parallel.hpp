#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmedac {

// Every parallel kernel in this library has a plain serial twin selected by
// this switch. The serial path is the reference the tests compare against.
enum class Exec { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace cmedac
