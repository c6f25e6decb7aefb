#include "gspec/types.hpp"

#include <atomic>
#include <cstdlib>

namespace gspec {

namespace {
std::atomic<int> g_max_threads{0};

int detect_threads() {
    const char* env = std::getenv("GABOR_SPECTRA_THREADS");
    if (env != nullptr) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}
}  // namespace

int max_threads() {
    int n = g_max_threads.load();
    if (n == 0) {
        n = detect_threads();
        g_max_threads.store(n);
    }
    return n;
}

void set_max_threads(int n) {
    if (n < 1) throw std::invalid_argument("set_max_threads: n must be >= 1");
    g_max_threads.store(n);
}

}  // namespace gspec
