#ifndef FLOQ_FFT_HPP
#define FLOQ_FFT_HPP

#include <complex>
#include <vector>

namespace floq::fft {

// 2D transforms on row-major G x G buffers, wrapping FFTW with a mutex-guarded
// plan cache (plan creation is not thread-safe; execution on cached plans is).
// backward: X[a,b] = sum_{k,l} C[k,l] exp(+2*pi*i*(k*a + l*b)/G)   (unnormalized)
// forward : C[k,l] = (1/G^2) sum_{a,b} X[a,b] exp(-2*pi*i*(k*a + l*b)/G)
void backward2d(std::vector<std::complex<double>>& buf, int G);
void forward2d(std::vector<std::complex<double>>& buf, int G);

// 1D versions, length G.
void backward1d(std::vector<std::complex<double>>& buf, int G);
void forward1d(std::vector<std::complex<double>>& buf, int G);

} // namespace floq::fft

#endif
