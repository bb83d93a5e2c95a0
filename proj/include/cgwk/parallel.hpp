#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace cgwk {

// out[i] = fn(i), computed in parallel or serially; order of out never depends on scheduling.
// An exception from fn is rethrown after the loop, the one with the lowest index first.
template <class T, class F>
std::vector<T> ordered_map(std::size_t n, F&& fn, bool parallel) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> err(n);
    long len = static_cast<long>(n);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < len; ++i) {
            try {
                out[i] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                err[i] = std::current_exception();
            }
        }
    } else {
        for (long i = 0; i < len; ++i) out[i] = fn(static_cast<std::size_t>(i));
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace cgwk
