#include "ajdn/diagnostics.hpp"

#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ajdn {
namespace {
std::mutex g_sink_mutex;
WarningSink g_sink;
} // namespace

void set_warning_sink(WarningSink sink) {
    std::lock_guard lock(g_sink_mutex);
    g_sink = std::move(sink);
}

void warn(const std::string& message) {
    std::lock_guard lock(g_sink_mutex);
    if (g_sink) {
        g_sink(message);
    }
}

void set_thread_limit(int threads) {
#ifdef _OPENMP
    if (threads > 0) {
        omp_set_num_threads(threads);
    } else {
        omp_set_num_threads(omp_get_num_procs());
    }
#else
    (void)threads;
#endif
}

} // namespace ajdn
