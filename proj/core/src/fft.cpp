#include "dnls/fft.hpp"

#include "dnls/errors.hpp"

#include <fftw3.h>

#include <mutex>
#include <unordered_map>
#include <vector>

namespace dnls::fft {

namespace {

struct SizePlans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// The FFTW planner is not reentrant; plan creation is serialized. Plans are
// built with FFTW_UNALIGNED so the new-array execute functions accept any
// caller buffer, and FFTW_ESTIMATE so planning never touches the input.
SizePlans& plans_for(int n) {
    static std::mutex mtx;
    static std::unordered_map<int, SizePlans> cache;

    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    std::vector<cplx> scratch_in(static_cast<std::size_t>(n));
    std::vector<cplx> scratch_out(static_cast<std::size_t>(n));
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());

    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    SizePlans p;
    p.fwd = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags);
    if (!p.fwd || !p.bwd)
        throw NumericalError("FFTW plan creation failed");
    return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
    auto* pin = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    if (pin == pout) {
        // The cached plans are out-of-place; route through a local buffer.
        std::vector<cplx> tmp(in.begin(), in.end());
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()), pout);
        return;
    }
    fftw_execute_dft(plan, pin, pout);
}

} // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != out.size())
        throw ConfigError("fft buffers must have equal length");
    execute(plans_for(static_cast<int>(in.size())).fwd, in, out);
}

void backward(std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != out.size())
        throw ConfigError("fft buffers must have equal length");
    execute(plans_for(static_cast<int>(in.size())).bwd, in, out);
}

} // namespace dnls::fft
