#include "waveshell/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "waveshell/errors.hpp"
#include "waveshell/rng.hpp"

namespace waveshell {

std::array<double, 3> QuadricShellSet::midpoint() const {
    return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

double QuadricShellSet::beta() const {
    const double dx = 0.5 * (a[0] - b[0]);
    const double dy = 0.5 * (a[1] - b[1]);
    const double dz = 0.5 * (a[2] - b[2]);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void QuadricShellSet::validate() const {
    if (!(c_star > 0.0)) throw Error("QuadricShellSet: c_star must be > 0");
    if (!(tolerance > 0.0)) throw Error("QuadricShellSet: T must be > 0");
}

bool membership(const QuadricShellSet& set, const std::array<double, 3>& p) {
    const double n2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double nrm = std::sqrt(n2);
    if (nrm < set.c_star - 1.0 || nrm > set.c_star + 1.0) return false;
    const double qa = (p[0] - set.a[0]) * (p[0] - set.b[0]) + (p[1] - set.a[1]) * (p[1] - set.b[1]) +
                      (p[2] - set.a[2]) * (p[2] - set.b[2]);
    return std::abs(qa) <= 1.0 / set.tolerance;
}

double SamplingRegion::volume() const {
    switch (kind) {
        case Kind::Cube: {
            const double s = 2.0 * half_side;
            return s * s * s;
        }
        case Kind::Ball:
            return 4.0 * M_PI / 3.0 * r_hi * r_hi * r_hi;
        case Kind::SphericalSlab:
            return 4.0 * M_PI / 3.0 * (r_hi * r_hi * r_hi - r_lo * r_lo * r_lo);
    }
    return 0.0;
}

SamplingRegion default_region(const QuadricShellSet& set) {
    set.validate();
    const double invT = 1.0 / set.tolerance;
    const double b2 = set.beta() * set.beta();
    SamplingRegion r;
    r.center = set.midpoint();
    if (b2 > invT) {
        r.kind = SamplingRegion::Kind::SphericalSlab;
        r.r_lo = std::sqrt(b2 - invT);
        r.r_hi = std::sqrt(b2 + invT);
    } else {
        r.kind = SamplingRegion::Kind::Ball;
        r.r_lo = 0.0;
        r.r_hi = std::sqrt(b2 + invT);
    }
    return r;
}

SamplingRegion shell_bounding_cube(const QuadricShellSet& set) {
    SamplingRegion r;
    r.kind = SamplingRegion::Kind::Cube;
    r.center = {0.0, 0.0, 0.0};
    r.half_side = set.c_star + 1.0;
    return r;
}

namespace {

std::array<double, 3> sample_point(const SamplingRegion& region, CounterRng& rng) {
    switch (region.kind) {
        case SamplingRegion::Kind::Cube: {
            return {region.center[0] + rng.next_uniform(-region.half_side, region.half_side),
                    region.center[1] + rng.next_uniform(-region.half_side, region.half_side),
                    region.center[2] + rng.next_uniform(-region.half_side, region.half_side)};
        }
        case SamplingRegion::Kind::Ball:
        case SamplingRegion::Kind::SphericalSlab: {
            double x, y, z;
            rng.next_sphere_dir(x, y, z);
            const double lo3 = region.r_lo * region.r_lo * region.r_lo;
            const double hi3 = region.r_hi * region.r_hi * region.r_hi;
            const double r = std::cbrt(lo3 + rng.next_double() * (hi3 - lo3));
            return {region.center[0] + r * x, region.center[1] + r * y, region.center[2] + r * z};
        }
    }
    return {};
}

}  // namespace

VolumeEstimate mc_volume(const std::function<bool(const std::array<double, 3>&)>& inside,
                         const SamplingRegion& region, std::size_t n_samples, std::uint64_t seed) {
    CounterRng rng(derive_stream(seed, 0x6d63766f6cULL));  // "mcvol" tag
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_samples; ++i)
        if (inside(sample_point(region, rng))) ++hits;
    const double vol = region.volume();
    const double p = n_samples ? static_cast<double>(hits) / n_samples : 0.0;
    VolumeEstimate est;
    est.value = p * vol;
    est.std_error = vol * std::sqrt(std::max(0.0, p * (1.0 - p) / (n_samples ? n_samples : 1)));
    est.samples = n_samples;
    return est;
}

VolumeEstimate mc_volume(const QuadricShellSet& set, const SamplingRegion& region,
                         std::size_t n_samples, std::uint64_t seed) {
    set.validate();
    return mc_volume([&set](const std::array<double, 3>& p) { return membership(set, p); }, region,
                     n_samples, seed);
}

double slice_area_quadrature(const std::function<bool(double, double)>& inside, double x_lo,
                             double x_hi, double y_lo, double y_hi, double cell) {
    if (!(cell > 0.0)) throw Error("slice_area_quadrature: cell size must be > 0");
    if (x_hi <= x_lo || y_hi <= y_lo) return 0.0;
    const int nx = static_cast<int>(std::ceil((x_hi - x_lo) / cell));
    const int ny = static_cast<int>(std::ceil((y_hi - y_lo) / cell));
    std::size_t count = 0;
    for (int i = 0; i < nx; ++i) {
        const double x = x_lo + (i + 0.5) * cell;
        for (int j = 0; j < ny; ++j)
            if (inside(x, y_lo + (j + 0.5) * cell)) ++count;
    }
    return static_cast<double>(count) * cell * cell;
}

namespace {

struct Interval {
    double lo, hi;
    bool empty() const { return hi <= lo; }
};

// y-range of the disc x^2-slice: center cy, radius^2 r2 at horizontal offset dx
Interval disc_column(double cy, double r2, double dx) {
    const double rem = r2 - dx * dx;
    if (rem <= 0.0) return {0.0, 0.0};
    const double h = std::sqrt(rem);
    return {cy - h, cy + h};
}

}  // namespace

double slice_area(const QuadricShellSet& set, int n, double cell) {
    set.validate();
    if (!(cell > 0.0)) throw Error("slice_area: cell size must be > 0");
    const double nn = static_cast<double>(n);
    const double invT = 1.0 / set.tolerance;

    // shell condition on the slice: x^2 + y^2 in [sh_lo, sh_hi]
    const double sh_hi = (set.c_star + 1.0) * (set.c_star + 1.0) - nn * nn;
    if (sh_hi <= 0.0) return 0.0;
    const double sh_lo = std::max(0.0, (set.c_star - 1.0) * (set.c_star - 1.0) - nn * nn);

    // quadric condition: (x - mx)^2 + (y - my)^2 in [q_lo, q_hi]
    const auto mid = set.midpoint();
    const double dz = nn - mid[2];
    const double base = set.beta() * set.beta() - dz * dz;
    const double q_hi = base + invT;
    if (q_hi <= 0.0) return 0.0;
    const double q_lo = std::max(0.0, base - invT);

    const double RA = std::sqrt(sh_hi), RB = std::sqrt(q_hi);
    const double x_lo = std::max(-RA, mid[0] - RB);
    const double x_hi = std::min(RA, mid[0] + RB);
    if (x_hi <= x_lo) return 0.0;
    const double y_lo = std::max(-RA, mid[1] - RB);

    const int nx = static_cast<int>(std::ceil((x_hi - x_lo) / cell));
    std::size_t count = 0;
    for (int i = 0; i < nx; ++i) {
        const double x = x_lo + (i + 0.5) * cell;
        // candidate y-range: intersection of the two outer discs (holes are
        // handled by the exact membership test below)
        const Interval ia = disc_column(0.0, sh_hi, x);
        const Interval ib = disc_column(mid[1], q_hi, x - mid[0]);
        const double lo = std::max(ia.lo, ib.lo);
        const double hi = std::min(ia.hi, ib.hi);
        if (hi <= lo) continue;
        // cells of the bounding-box grid whose centers fall in [lo, hi]
        int j0 = static_cast<int>(std::floor((lo - y_lo) / cell - 0.5));
        if (j0 < 0) j0 = 0;
        for (int j = j0;; ++j) {
            const double y = y_lo + (j + 0.5) * cell;
            if (y > hi) break;
            if (y < lo) continue;
            const double r2 = x * x + y * y;
            if (r2 < sh_lo || r2 > sh_hi) continue;
            const double ddx = x - mid[0], ddy = y - mid[1];
            const double q = ddx * ddx + ddy * ddy;
            if (q < q_lo || q > q_hi) continue;
            ++count;
        }
    }
    return static_cast<double>(count) * cell * cell;
}

double slice_sum(const QuadricShellSet& set, double cell) {
    const int bound = static_cast<int>(std::ceil(set.c_star + 1.0));
    double s = 0.0;
    for (int n = -bound; n <= bound; ++n) s += slice_area(set, n, cell);
    return s;
}

double slice_sup(const QuadricShellSet& set, double cell) {
    const int bound = static_cast<int>(std::ceil(set.c_star + 1.0));
    double s = 0.0;
    for (int n = -bound; n <= bound; ++n) s = std::max(s, slice_area(set, n, cell));
    return s;
}

double slice_bound_ratio(const QuadricShellSet& set, double cell, std::size_t mc_samples,
                     std::uint64_t seed) {
    const double num = slice_sum(set, cell);
    const double denom = mc_volume(set, default_region(set), mc_samples, seed).value +
                         slice_sup(set, cell);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return num / denom;
}

int monotonicity_changes(const std::vector<double>& samples) {
    if (samples.size() < 2) throw TooFewSamples("monotonicity_changes: need at least 2 samples");
    int changes = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double d = samples[i] - samples[i - 1];
        if (d == 0.0) continue;
        const int sign = d > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++changes;
        last_sign = sign;
    }
    return changes;
}

}  // namespace waveshell
