#include "stratipm/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace stratipm {

namespace {
// The FFTW planner is not thread-safe; executions on distinct plans are.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Dft2::Dft2(int n0, int n1) : n0_(n0), n1_(n1) {
    buf_ = reinterpret_cast<std::complex<double>*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n0) * n1));
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_2d(n0, n1, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_2d(n0, n1, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Dft2::~Dft2() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_);
}

void Dft2::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void Dft2::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

Dft1Rows::Dft1Rows(int nrows, int n) : nrows_(nrows), n_(n) {
    buf_ = reinterpret_cast<std::complex<double>*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(nrows) * n));
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    const int dims[1] = {n};
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_many_dft(1, dims, nrows, b, nullptr, 1, n, b, nullptr, 1, n,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_many_dft(1, dims, nrows, b, nullptr, 1, n, b, nullptr, 1, n,
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
}

Dft1Rows::~Dft1Rows() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_);
}

void Dft1Rows::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void Dft1Rows::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

}  // namespace stratipm
