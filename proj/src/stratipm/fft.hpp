#pragma once

#include <complex>
#include <memory>

namespace stratipm {

// 2-D complex DFT through FFTW, e^{-2pi i} sign for forward(), unnormalized.
// Plans are created with FFTW_ESTIMATE so results are reproducible run to run.
// Each instance owns its buffer; callers stage data through data().
class Dft2 {
  public:
    Dft2(int n0, int n1);
    ~Dft2();
    Dft2(const Dft2&) = delete;
    Dft2& operator=(const Dft2&) = delete;

    int n0() const { return n0_; }
    int n1() const { return n1_; }
    std::complex<double>* data() { return buf_; }

    void forward();
    void backward();

  private:
    int n0_, n1_;
    std::complex<double>* buf_;
    void* plan_fwd_;
    void* plan_bwd_;
};

// 1-D batched row transform: nrows rows of length n, contiguous.
class Dft1Rows {
  public:
    Dft1Rows(int nrows, int n);
    ~Dft1Rows();
    Dft1Rows(const Dft1Rows&) = delete;
    Dft1Rows& operator=(const Dft1Rows&) = delete;

    int rows() const { return nrows_; }
    int n() const { return n_; }
    std::complex<double>* data() { return buf_; }

    void forward();
    void backward();

  private:
    int nrows_, n_;
    std::complex<double>* buf_;
    void* plan_fwd_;
    void* plan_bwd_;
};

}  // namespace stratipm
