#include "gspec/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace gspec {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex plan_mutex;

fftw_plan get_plan(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cdouble> buf(n);
    fftw_plan p = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(buf.data()),
        reinterpret_cast<fftw_complex*>(buf.data()),
        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    cache.emplace(key, p);
    return p;
}

}  // namespace

void fft(std::vector<cdouble>& data, int sign) {
    fft_span(data.data(), (int)data.size(), sign);
}

void fft_span(cdouble* data, int n, int sign) {
    if (n == 0) return;
    fftw_plan p = get_plan(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

std::vector<cdouble> fft_copy(const std::vector<cdouble>& data, int sign) {
    std::vector<cdouble> out(data);
    fft(out, sign);
    return out;
}

}  // namespace gspec
