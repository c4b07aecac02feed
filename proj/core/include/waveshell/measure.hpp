#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace waveshell {

/// The quadric-shell set
///   U = { v in R^3 : c_* - 1 <= |v| <= c_* + 1, |(v - a).(v - b)| <= 1/T }.
/// Since (v-a).(v-b) = |v - mid|^2 - beta^2, the quadric condition confines v
/// to a thin spherical slab of radius ~beta around the chord midpoint.
struct QuadricShellSet {
    std::array<double, 3> a{};
    std::array<double, 3> b{};
    double c_star = 0.0;
    double tolerance = 1.0;  ///< T

    std::array<double, 3> midpoint() const;
    double beta() const;  ///< |a - b| / 2
    void validate() const;
};

bool membership(const QuadricShellSet& set, const std::array<double, 3>& point);

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Uniform sampling region for Monte Carlo volume estimates.
struct SamplingRegion {
    enum class Kind { Cube, Ball, SphericalSlab } kind = Kind::Cube;
    std::array<double, 3> center{};
    double half_side = 0.0;  ///< Cube
    double r_lo = 0.0;       ///< SphericalSlab inner radius (Ball: 0)
    double r_hi = 0.0;       ///< SphericalSlab / Ball outer radius

    double volume() const;
};

/// Region guaranteed to contain U: the exact quadric slab around the midpoint
/// when beta^2 > 1/T, otherwise the ball of radius sqrt(beta^2 + 1/T).
SamplingRegion default_region(const QuadricShellSet& set);

/// Axis-aligned cube bounding the whole shell, half-side c_* + 1.
SamplingRegion shell_bounding_cube(const QuadricShellSet& set);

/// Hit-fraction * region volume with binomial standard error. The predicate
/// form exists so tests can swap in analytic sets.
VolumeEstimate mc_volume(const std::function<bool(const std::array<double, 3>&)>& inside,
                         const SamplingRegion& region, std::size_t n_samples, std::uint64_t seed);
VolumeEstimate mc_volume(const QuadricShellSet& set, const SamplingRegion& region,
                         std::size_t n_samples, std::uint64_t seed);

/// Midpoint quadrature of a planar indicator over an explicit bounding box.
double slice_area_quadrature(const std::function<bool(double, double)>& inside, double x_lo,
                             double x_hi, double y_lo, double y_hi, double cell);

/// Area of the slice U ∩ {third coordinate = n} by midpoint quadrature at the
/// given cell size over the slice's bounding box. Cells that cannot satisfy
/// the two annulus conditions are skipped; the result equals the full scan.
double slice_area(const QuadricShellSet& set, int n, double cell);

/// Sum (resp. max) of slice_area over integer n in [-ceil(c_*+1), ceil(c_*+1)].
double slice_sum(const QuadricShellSet& set, double cell);
double slice_sup(const QuadricShellSet& set, double cell);

/// slice_sum / (mc volume + slice_sup); +infinity when the denominator is 0.
double slice_bound_ratio(const QuadricShellSet& set, double cell, std::size_t mc_samples,
                     std::uint64_t seed);

/// Number of strict sign changes of consecutive differences; plateaus are
/// ignored. Throws TooFewSamples for fewer than two samples.
int monotonicity_changes(const std::vector<double>& samples);

}  // namespace waveshell
