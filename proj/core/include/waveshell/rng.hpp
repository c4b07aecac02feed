#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace waveshell {

// Counter-based pseudorandom primitives. Every draw is a pure function of
// (key, counter), so parallel fills and re-runs produce identical streams.

/// splitmix64 finalizer; full-period bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Combine a seed with a stream tag into an independent stream key.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag1, std::uint64_t tag2) {
    return derive_stream(derive_stream(seed, tag1), tag2);
}

/// Stateless stream: value i of stream `key` is mix64(key + i*golden).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard complex Gaussian, E|z|^2 = 1 (Box-Muller).
    std::complex<double> next_complex_gaussian() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-std::log(u1));
        const double th = 2.0 * M_PI * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    /// e^{i theta}, theta uniform in [0, 2 pi).
    std::complex<double> next_unit_phase() {
        const double th = 2.0 * M_PI * next_double();
        return {std::cos(th), std::sin(th)};
    }

    /// Uniform direction on S^2.
    void next_sphere_dir(double& x, double& y, double& z) {
        const double u = 2.0 * next_double() - 1.0;
        const double phi = 2.0 * M_PI * next_double();
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        x = s * std::cos(phi);
        y = s * std::sin(phi);
        z = u;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace waveshell
