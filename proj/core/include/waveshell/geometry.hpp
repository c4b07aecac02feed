#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace waveshell {

/// Discretization of R^m x T^n. Euclidean directions are periodized to period
/// P; torus directions have period 1. Immutable after construction.
struct GeometrySpec {
    int euclid_dims = 0;              ///< m
    int torus_dims = 0;               ///< n
    double euclid_period = 16.0;      ///< P
    std::vector<int> grid_sizes;      ///< m + n entries

    int dims() const { return euclid_dims + torus_dims; }
    bool is_euclid(int d) const { return d < euclid_dims; }
    double direction_period(int d) const { return is_euclid(d) ? euclid_period : 1.0; }

    std::size_t total_points() const;
    /// Product of per-direction sample spacings.
    double cell_volume() const;
    /// P^m (torus directions contribute 1).
    double domain_volume() const;

    /// Throws InvalidGeometry naming the offending field.
    void validate() const;
};

/// Per-direction frequency values in ascending order. Euclidean direction j
/// holds k/P, torus direction holds integer k, k in [-G/2, G/2).
struct FrequencyLattice {
    GeometrySpec geom;
    std::vector<std::vector<double>> freqs;

    double spacing(int d) const { return geom.is_euclid(d) ? 1.0 / geom.euclid_period : 1.0; }
    std::size_t total_points() const { return geom.total_points(); }

    /// Decompose a flat row-major index into per-direction indices.
    std::vector<int> unflatten(std::size_t flat) const;
    /// Frequency vector at a flat index.
    std::vector<double> frequency(std::size_t flat) const;
    /// |xi|^2 at a flat index.
    double norm2(std::size_t flat) const;
};

FrequencyLattice build_lattice(const GeometrySpec& geom);

/// Optional ball intersection for shell supports.
struct BallSpec {
    std::vector<double> center;
    double radius = 0.0;
};

/// Annulus c_* - w <= |v| <= c_* + w, optionally intersected with a ball.
struct ShellSpec {
    double center = 0.0;       ///< c_*
    double half_width = 1.0;   ///< w
    std::optional<BallSpec> ball;

    /// c_* >= 0, w > 0, ball radius > 0 and center dimension = dims.
    void validate(int dims) const;
};

/// Slab |a . (v - offset)| <= M around a hyperplane through `offset`.
struct StripSpec {
    std::vector<double> direction;   ///< unit vector a
    double half_width = 1.0;         ///< M
    std::vector<double> offset;      ///< empty means zero

    /// |a| = 1 within 1e-12, M > 0, dimensions consistent.
    void validate(int dims) const;
};

/// Flat indices (ascending) of lattice points inside the shell. May be empty.
std::vector<std::size_t> shell_indices(const FrequencyLattice& lattice, const ShellSpec& shell);

/// Flat indices (ascending) of lattice points inside the strip. May be empty.
std::vector<std::size_t> strip_indices(const FrequencyLattice& lattice, const StripSpec& strip);

}  // namespace waveshell
