#pragma once

// Thin OpenMP helpers. Exceptions thrown inside a worker are captured and the
// first one is rethrown on the calling thread after the loop joins.

#include <cstddef>
#include <exception>
#include <mutex>

namespace micz {

int max_threads() noexcept;

template <typename Fn>
void parallel_for(std::ptrdiff_t count, Fn&& body)
{
    std::exception_ptr failure;
    std::mutex guard;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace micz
