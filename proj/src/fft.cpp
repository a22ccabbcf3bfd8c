#include "mlwf/detail/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace mlwf::detail {

namespace {
std::mutex planner_mutex;  // the FFTW planner is not thread safe
}

void fft_cube(std::vector<cplx>& data, int dim, int n, int sign) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("fft dimension must be 1, 2 or 3");
    std::size_t total = 1;
    for (int j = 0; j < dim; ++j) total *= static_cast<std::size_t>(n);
    if (data.size() != total) throw std::invalid_argument("fft buffer size does not match its shape");

    // Aligned scratch buffer so the same plan shape always takes the same code path.
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    if (!buf) throw std::runtime_error("fftw_malloc failed");
    int dims[3] = {n, n, n};
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft(dim, dims, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) {
        fftw_free(buf);
        throw std::runtime_error("fftw plan creation failed");
    }
    std::memcpy(buf, data.data(), sizeof(fftw_complex) * total);
    fftw_execute(plan);
    std::memcpy(static_cast<void*>(data.data()), buf, sizeof(fftw_complex) * total);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
}

}  // namespace mlwf::detail
