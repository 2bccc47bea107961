#include "floq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace floq::fft {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int rank, int G, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(rank, G, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // In-place plans with FFTW_ESTIMATE do not touch the buffer at planning
    // time, so a throwaway buffer fixes the alignment class once.
    std::vector<std::complex<double>> tmp(rank == 2 ? size_t(G) * G : size_t(G));
    auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
    fftw_plan plan = rank == 2 ? fftw_plan_dft_2d(G, G, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                               : fftw_plan_dft_1d(G, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw planning failed");
    cache.emplace(key, plan);
    return plan;
}

void run(std::vector<std::complex<double>>& buf, int rank, int G, int sign, bool normalize) {
    const size_t want = rank == 2 ? size_t(G) * G : size_t(G);
    if (buf.size() != want) throw std::runtime_error("fft: buffer size mismatch");
    fftw_plan plan = get_plan(rank, G, sign);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, p, p);
    if (normalize) {
        const double s = 1.0 / double(want);
        for (auto& v : buf) v *= s;
    }
}

} // namespace

void backward2d(std::vector<std::complex<double>>& buf, int G) { run(buf, 2, G, FFTW_BACKWARD, false); }
void forward2d(std::vector<std::complex<double>>& buf, int G) { run(buf, 2, G, FFTW_FORWARD, true); }
void backward1d(std::vector<std::complex<double>>& buf, int G) { run(buf, 1, G, FFTW_BACKWARD, false); }
void forward1d(std::vector<std::complex<double>>& buf, int G) { run(buf, 1, G, FFTW_FORWARD, true); }

} // namespace floq::fft
