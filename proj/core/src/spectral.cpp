#include "waveshell/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "waveshell/errors.hpp"

namespace waveshell {

void SpectralField::validate() const {
    geom.validate();
    if (coef.size() != geom.total_points())
        throw InvalidGeometry("SpectralField: coefficient count " + std::to_string(coef.size()) +
                              " does not match grid point count " + std::to_string(geom.total_points()));
    for (const auto& c : coef)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidGeometry("SpectralField: non-finite coefficient");
}

void PhysicalField::validate() const {
    geom.validate();
    if (samples.size() != geom.total_points())
        throw InvalidGeometry("PhysicalField: sample count " + std::to_string(samples.size()) +
                              " does not match grid point count " + std::to_string(geom.total_points()));
}

SpectralField zero_field(const GeometrySpec& geom) {
    geom.validate();
    return SpectralField{geom, std::vector<std::complex<double>>(geom.total_points())};
}

namespace {

// FFTW plans and their aligned buffers, cached per grid shape. Plan creation
// is not thread-safe, and we reuse one scratch buffer pair per shape, so the
// whole transform is serialized behind a mutex. FFTW_ESTIMATE keeps plans
// deterministic for a fixed build.
struct PlanEntry {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan backward = nullptr;  // e^{+2 pi i jk/G}
    fftw_plan forward = nullptr;   // e^{-2 pi i jk/G}
    std::size_t n = 0;

    ~PlanEntry() {
        if (backward) fftw_destroy_plan(backward);
        if (forward) fftw_destroy_plan(forward);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

class FftEngine {
public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    // sign +1: backward/synthesis, sign -1: forward/analysis. Unnormalized.
    void transform(const std::vector<int>& dims, const std::complex<double>* src,
                   std::complex<double>* dst, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        PlanEntry& e = entry(dims);
        for (std::size_t i = 0; i < e.n; ++i) {
            e.in[i][0] = src[i].real();
            e.in[i][1] = src[i].imag();
        }
        fftw_execute(sign > 0 ? e.backward : e.forward);
        for (std::size_t i = 0; i < e.n; ++i) dst[i] = {e.out[i][0], e.out[i][1]};
    }

private:
    PlanEntry& entry(const std::vector<int>& dims) {
        auto it = cache_.find(dims);
        if (it != cache_.end()) return *it->second;
        auto e = std::make_unique<PlanEntry>();
        std::size_t n = 1;
        for (int g : dims) n *= static_cast<std::size_t>(g);
        e->n = n;
        e->in = fftw_alloc_complex(n);
        e->out = fftw_alloc_complex(n);
        e->backward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), e->in, e->out,
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
        e->forward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), e->in, e->out,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
        auto [pos, ok] = cache_.emplace(dims, std::move(e));
        (void)ok;
        return *pos->second;
    }

    std::mutex mutex_;
    std::map<std::vector<int>, std::unique_ptr<PlanEntry>> cache_;
};

// Map between ascending-frequency layout (index i holds k = i - G/2) and DFT
// bin layout (bin = k mod G), per direction. Walks the row-major index with
// precomputed per-direction bin offsets.
void reorder(const GeometrySpec& geom, const std::vector<std::complex<double>>& src,
             std::vector<std::complex<double>>& dst, bool to_bins) {
    const int nd = geom.dims();
    const auto& gs = geom.grid_sizes;
    std::vector<std::vector<std::size_t>> offset(static_cast<std::size_t>(nd));
    std::size_t stride = 1;
    for (int d = nd - 1; d >= 0; --d) {
        const int g = gs[static_cast<std::size_t>(d)];
        auto& off = offset[static_cast<std::size_t>(d)];
        off.resize(static_cast<std::size_t>(g));
        for (int i = 0; i < g; ++i)
            off[static_cast<std::size_t>(i)] = static_cast<std::size_t>(((i - g / 2) % g + g) % g) * stride;
        stride *= static_cast<std::size_t>(g);
    }
    const std::size_t total = geom.total_points();
    std::vector<int> idx(static_cast<std::size_t>(nd), 0);
    std::size_t other = 0;
    for (int d = 0; d < nd; ++d) other += offset[static_cast<std::size_t>(d)][0];
    for (std::size_t flat = 0; flat < total; ++flat) {
        if (to_bins)
            dst[other] = src[flat];
        else
            dst[flat] = src[other];
        for (int d = nd - 1; d >= 0; --d) {
            auto du = static_cast<std::size_t>(d);
            other -= offset[du][static_cast<std::size_t>(idx[du])];
            if (++idx[du] < gs[du]) {
                other += offset[du][static_cast<std::size_t>(idx[du])];
                break;
            }
            idx[du] = 0;
            other += offset[du][0];
        }
    }
    // the final odometer wrap leaves `other` at its initial value
}

}  // namespace

PhysicalField to_physical(const SpectralField& f) {
    f.validate();
    const std::size_t n = f.coef.size();
    std::vector<std::complex<double>> bins(n);
    reorder(f.geom, f.coef, bins, true);
    PhysicalField u{f.geom, std::vector<std::complex<double>>(n)};
    FftEngine::instance().transform(f.geom.grid_sizes, bins.data(), u.samples.data(), +1);
    return u;
}

SpectralField to_spectral(const PhysicalField& u) {
    u.validate();
    const std::size_t n = u.samples.size();
    std::vector<std::complex<double>> bins(n);
    FftEngine::instance().transform(u.geom.grid_sizes, u.samples.data(), bins.data(), -1);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& c : bins) c *= inv;
    SpectralField f{u.geom, std::vector<std::complex<double>>(n)};
    reorder(u.geom, bins, f.coef, false);
    return f;
}

SpectralField propagate(const SpectralField& f, double t) {
    f.validate();
    const FrequencyLattice lat = build_lattice(f.geom);
    SpectralField g{f.geom, std::vector<std::complex<double>>(f.coef.size())};
    // e^{2 pi i t |xi|^2} factors over directions
    const int nd = f.geom.dims();
    std::vector<std::vector<std::complex<double>>> phase(static_cast<std::size_t>(nd));
    for (int d = 0; d < nd; ++d) {
        const auto& fr = lat.freqs[static_cast<std::size_t>(d)];
        auto& ph = phase[static_cast<std::size_t>(d)];
        ph.resize(fr.size());
        for (std::size_t i = 0; i < fr.size(); ++i) {
            const double arg = 2.0 * M_PI * t * fr[i] * fr[i];
            ph[i] = {std::cos(arg), std::sin(arg)};
        }
    }
    const auto& gs = f.geom.grid_sizes;
    const std::size_t inner = static_cast<std::size_t>(gs[static_cast<std::size_t>(nd - 1)]);
    const std::size_t blocks = f.coef.size() / inner;
    std::vector<int> idx(static_cast<std::size_t>(nd - 1), 0);
    const auto& inner_phase = phase[static_cast<std::size_t>(nd - 1)];
    std::size_t flat = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::complex<double> outer(1.0, 0.0);
        for (int d = 0; d + 1 < nd; ++d)
            outer *= phase[static_cast<std::size_t>(d)][static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        for (std::size_t i = 0; i < inner; ++i, ++flat)
            g.coef[flat] = f.coef[flat] * outer * inner_phase[i];
        for (int d = nd - 2; d >= 0; --d) {
            auto du = static_cast<std::size_t>(d);
            if (++idx[du] < gs[du]) break;
            idx[du] = 0;
        }
    }
    return g;
}

}  // namespace waveshell
