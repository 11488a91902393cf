#include "micz/parallel.hpp"

#include <omp.h>

namespace micz {

int max_threads() noexcept
{
    return omp_get_max_threads();
}

} // namespace micz
