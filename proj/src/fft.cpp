#include "muhs/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace muhs::fft {

namespace {

// fftw plan creation is not thread-safe; execution on private buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    int n = 0;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    explicit PlanPair(int n_) : n(n_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        real = fftw_alloc_real(n);
        cplx = fftw_alloc_complex(n / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(inv);
        fftw_destroy_plan(fwd);
        fftw_free(cplx);
        fftw_free(real);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

PlanPair& plans_for(int n) {
    thread_local std::map<int, std::unique_ptr<PlanPair>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    }
    return *it->second;
}

}  // namespace

std::vector<std::complex<double>> forward(const std::vector<double>& in) {
    const int n = static_cast<int>(in.size());
    if (n < 2) throw std::invalid_argument("fft: size must be >= 2");
    PlanPair& p = plans_for(n);
    std::memcpy(p.real, in.data(), n * sizeof(double));
    fftw_execute(p.fwd);
    std::vector<std::complex<double>> out(n / 2 + 1);
    std::memcpy(out.data(), p.cplx, out.size() * sizeof(fftw_complex));
    return out;
}

std::vector<double> inverse(const std::vector<std::complex<double>>& spec, int n) {
    if (static_cast<int>(spec.size()) != n / 2 + 1) {
        throw std::invalid_argument("fft: spectrum size mismatch");
    }
    PlanPair& p = plans_for(n);
    std::memcpy(p.cplx, spec.data(), spec.size() * sizeof(fftw_complex));
    fftw_execute(p.inv);
    std::vector<double> out(n);
    const double scale = 1.0 / n;
    for (int j = 0; j < n; ++j) out[j] = p.real[j] * scale;
    return out;
}

}  // namespace muhs::fft
