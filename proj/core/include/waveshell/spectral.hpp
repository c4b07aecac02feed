#pragma once

#include <complex>
#include <vector>

#include "waveshell/geometry.hpp"

namespace waveshell {

/// Fourier coefficients over the full frequency lattice, row-major, indexed
/// in the same ascending-frequency order as FrequencyLattice.
struct SpectralField {
    GeometrySpec geom;
    std::vector<std::complex<double>> coef;

    void validate() const;
};

/// Complex samples over the spatial grid x_j = j * (period / G) per direction.
struct PhysicalField {
    GeometrySpec geom;
    std::vector<std::complex<double>> samples;

    void validate() const;
};

SpectralField zero_field(const GeometrySpec& geom);

/// Synthesis u(x) = sum_xi f(xi) e^{2 pi i x.xi} at every grid point (FFT).
PhysicalField to_physical(const SpectralField& f);

/// Exact grid inverse of to_physical (analysis sum divided by point count).
SpectralField to_spectral(const PhysicalField& u);

/// Coefficientwise multiplier e^{2 pi i t |xi|^2}; exact free propagator.
SpectralField propagate(const SpectralField& f, double t);

}  // namespace waveshell
