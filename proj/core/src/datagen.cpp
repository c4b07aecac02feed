#include "waveshell/datagen.hpp"

#include <cmath>
#include <sstream>

#include "waveshell/errors.hpp"
#include "waveshell/rng.hpp"

namespace waveshell {

namespace {

std::complex<double> draw(Distribution dist, std::uint64_t seed, std::size_t flat) {
    CounterRng rng(derive_stream(seed, static_cast<std::uint64_t>(flat)));
    switch (dist) {
        case Distribution::UnitModulusRandomPhase:
            return rng.next_unit_phase();
        case Distribution::ComplexGaussian:
            return rng.next_complex_gaussian();
    }
    return {};
}

}  // namespace

SpectralField random_shell_data(const GeometrySpec& geom, const ShellSpec& shell, Distribution dist,
                                std::uint64_t seed) {
    const FrequencyLattice lat = build_lattice(geom);
    const auto idx = shell_indices(lat, shell);
    if (idx.empty()) {
        std::ostringstream msg;
        msg << "random_shell_data: empty shell c_*=" << shell.center << " w=" << shell.half_width
            << " on lattice with spacings (";
        for (int d = 0; d < geom.dims(); ++d) msg << (d ? "," : "") << lat.spacing(d);
        msg << ")";
        throw EmptyShell(msg.str());
    }
    SpectralField f = zero_field(geom);
    for (std::size_t flat : idx) f.coef[flat] = draw(dist, seed, flat);
    return f;
}

namespace {

double envelope_at(const FrequencyLattice& lat, std::size_t flat, const StripSpec& strip, double sigma) {
    if (std::isinf(sigma)) return 1.0;
    const auto v = lat.frequency(flat);
    double d2 = 0.0;
    for (std::size_t d = 0; d < v.size(); ++d) {
        const double off = strip.offset.empty() ? 0.0 : strip.offset[d];
        const double dx = v[d] - off;
        d2 += dx * dx;
    }
    return std::exp(-d2 / (2.0 * sigma * sigma));
}

}  // namespace

SpectralField random_strip_data(const GeometrySpec& geom, const StripSpec& strip, Distribution dist,
                                std::uint64_t seed, double envelope_sigma) {
    const FrequencyLattice lat = build_lattice(geom);
    const auto idx = strip_indices(lat, strip);
    if (idx.empty()) throw EmptyStrip("random_strip_data: strip selects no lattice point");
    SpectralField f = zero_field(geom);
    for (std::size_t flat : idx)
        f.coef[flat] = envelope_at(lat, flat, strip, envelope_sigma) * draw(dist, seed, flat);
    return f;
}

SpectralField gaussian_strip_packet(const GeometrySpec& geom, const StripSpec& strip, double sigma) {
    const FrequencyLattice lat = build_lattice(geom);
    const auto idx = strip_indices(lat, strip);
    if (idx.empty()) throw EmptyStrip("gaussian_strip_packet: strip selects no lattice point");
    SpectralField f = zero_field(geom);
    for (std::size_t flat : idx) f.coef[flat] = envelope_at(lat, flat, strip, sigma);
    return f;
}

int counterexample_box_side(double n2, int d) {
    return static_cast<int>(std::floor(std::sqrt(n2 / d)));
}

SpectralField counterexample_data(const GeometrySpec& geom, double n1, double n2, int d) {
    geom.validate();
    if (d < 2) throw InvalidGeometry("counterexample_data: d must be >= 2, got " + std::to_string(d));
    if (geom.euclid_dims != 1)
        throw InvalidGeometry("counterexample_data: needs exactly one Euclidean direction, got m=" +
                              std::to_string(geom.euclid_dims));
    if (geom.torus_dims != d - 1)
        throw InvalidGeometry("counterexample_data: needs n = d-1 = " + std::to_string(d - 1) +
                              " torus directions, got n=" + std::to_string(geom.torus_dims));
    if (geom.euclid_period < 400.0)
        throw ResolutionTooCoarse("counterexample_data: Euclidean spacing 1/P = " +
                                  std::to_string(1.0 / geom.euclid_period) + " exceeds 1/400");

    const FrequencyLattice lat = build_lattice(geom);
    const double lo = n1 - 0.01, hi = n1 + 0.01;
    const auto& f0 = lat.freqs[0];
    // open interval, matching the construction
    std::vector<int> euclid_hits;
    for (std::size_t i = 0; i < f0.size(); ++i)
        if (f0[i] > lo && f0[i] < hi) euclid_hits.push_back(static_cast<int>(i));
    if (hi > f0.back())
        throw RangeExceeded("counterexample_data: N1 + 1/100 = " + std::to_string(hi) +
                            " exceeds the Euclidean lattice range " + std::to_string(f0.back()));
    if (static_cast<int>(euclid_hits.size()) < 8)
        throw ResolutionTooCoarse("counterexample_data: only " + std::to_string(euclid_hits.size()) +
                                  " Euclidean lattice points fall in (N1 - 1/100, N1 + 1/100); need >= 8");

    const int K = counterexample_box_side(n2, d);
    if (K < 1)
        throw RangeExceeded("counterexample_data: floor(sqrt(N2/d)) = " + std::to_string(K) +
                            " leaves no torus mode");
    for (int t = 0; t < geom.torus_dims; ++t) {
        const auto& ft = lat.freqs[static_cast<std::size_t>(1 + t)];
        if (static_cast<double>(K) > ft.back())
            throw RangeExceeded("counterexample_data: torus mode " + std::to_string(K) +
                                " exceeds lattice range " + std::to_string(ft.back()));
    }

    SpectralField f = zero_field(geom);
    // walk the (d-1)-dimensional torus box [1, K]^{d-1} around each Euclidean hit
    std::vector<int> tidx(static_cast<std::size_t>(geom.torus_dims), 1);
    const auto torus_offset = [&](int t, int k) {
        // position of integer frequency k in direction 1+t
        const int g = geom.grid_sizes[static_cast<std::size_t>(1 + t)];
        return static_cast<std::size_t>(k + g / 2);
    };
    bool done = false;
    while (!done) {
        std::size_t tail = 0;
        for (int t = 0; t < geom.torus_dims; ++t)
            tail = tail * static_cast<std::size_t>(geom.grid_sizes[static_cast<std::size_t>(1 + t)]) +
                   torus_offset(t, tidx[static_cast<std::size_t>(t)]);
        const std::size_t stride = geom.total_points() / static_cast<std::size_t>(geom.grid_sizes[0]);
        for (int i : euclid_hits) f.coef[static_cast<std::size_t>(i) * stride + tail] = 1.0;
        int t = geom.torus_dims - 1;
        for (; t >= 0; --t) {
            if (++tidx[static_cast<std::size_t>(t)] <= K) break;
            tidx[static_cast<std::size_t>(t)] = 1;
        }
        if (t < 0) done = true;
    }
    return f;
}

}  // namespace waveshell
