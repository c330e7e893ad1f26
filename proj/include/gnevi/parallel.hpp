#pragma once

#include <cstddef>
#include <cstdint>

#ifdef GNEVI_OPENMP
#include <omp.h>
#endif

namespace gnevi::par {

// Execution mode for the data-parallel kernels. Every kernel has a serial
// path that produces bit-identical results; the OpenMP path writes into
// per-index slots and merges in index order, so verdicts never depend on the
// thread count.
enum class Mode : std::uint8_t { serial, openmp };

inline Mode default_mode() {
#ifdef GNEVI_OPENMP
    return Mode::openmp;
#else
    return Mode::serial;
#endif
}

template <typename F>
void for_index(std::size_t n, Mode mode, F&& body) {
#ifdef GNEVI_OPENMP
    if (mode == Mode::openmp) {
        const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < m; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int max_threads() {
#ifdef GNEVI_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace gnevi::par
