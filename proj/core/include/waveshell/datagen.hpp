#pragma once

#include <cstdint>
#include <limits>

#include "waveshell/geometry.hpp"
#include "waveshell/spectral.hpp"

namespace waveshell {

enum class Distribution { UnitModulusRandomPhase, ComplexGaussian };

/// Declarative description of one initial-data construction.
struct DataRecipe {
    enum class Kind { ShellRandom, StripRandom, Counterexample } kind = Kind::ShellRandom;
    ShellSpec shell;
    StripSpec strip;
    double envelope_sigma = std::numeric_limits<double>::infinity();
    double n1 = 0.0;  ///< counter-example Euclidean center
    double n2 = 0.0;  ///< counter-example ball scale
    int d = 0;        ///< counter-example total dimension
    Distribution distribution = Distribution::UnitModulusRandomPhase;
    std::uint64_t seed = 0;
};

/// I.i.d. coefficients from `dist` on the shell index set, zero elsewhere.
/// Per-index counter-based streams: same inputs give a bitwise-identical
/// field regardless of fill order. Throws EmptyShell when nothing matches.
SpectralField random_shell_data(const GeometrySpec& geom, const ShellSpec& shell, Distribution dist,
                                std::uint64_t seed);

/// Same over the strip index set, damped by exp(-|v - offset|^2 / (2 sigma^2)).
/// sigma = inf leaves the draws undamped. Throws EmptyStrip.
SpectralField random_strip_data(const GeometrySpec& geom, const StripSpec& strip, Distribution dist,
                                std::uint64_t seed,
                                double envelope_sigma = std::numeric_limits<double>::infinity());

/// Deterministic coherent packet: coefficient = envelope on the strip, zero
/// elsewhere. This is the localized, L1-controlled data the dispersive-decay
/// measurement needs; i.i.d. phases would make a spatially stationary field
/// whose sup-norm does not decay.
SpectralField gaussian_strip_packet(const GeometrySpec& geom, const StripSpec& strip, double sigma);

/// Indicator data of the R x T^{d-1} counter-example: coefficient 1 exactly on
/// {xi_1 in (n1 - 1/100, n1 + 1/100)} x {1 <= n_j <= floor(sqrt(n2/d))}.
/// Requires m = 1, n = d-1, spacing 1/P <= 1/400 with at least 8 lattice
/// points in the interval (ResolutionTooCoarse otherwise); RangeExceeded when
/// the requested modes fall outside the lattice.
SpectralField counterexample_data(const GeometrySpec& geom, double n1, double n2, int d);

/// Torus box side floor(sqrt(n2/d)) used by the counter-example.
int counterexample_box_side(double n2, int d);

}  // namespace waveshell
