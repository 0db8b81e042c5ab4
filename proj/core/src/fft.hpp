#pragma once

#include "laxscatter/field.hpp"

#include <fftw3.h>

namespace laxscatter::detail {

// Reusable unnormalized 1-D DFT plans, executed on caller arrays (new-array execute).
class Dft {
public:
    explicit Dft(int n);
    ~Dft();
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;

    int size() const { return n_; }
    // G_m = sum_j g_j e^{-2 pi i j m / n}, in place
    void forward(CVec& g) const;
    // g_j = sum_m G_m e^{+2 pi i j m / n}, in place, no 1/n
    void backward(CVec& g) const;

private:
    int n_;
    fftw_plan fwd_, bwd_;
};

}  // namespace laxscatter::detail
