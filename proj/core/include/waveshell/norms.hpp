#pragma once

#include "waveshell/spectral.hpp"

namespace waveshell {

/// Time quadrature window [t0, t1] sampled at nt midpoints.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    int nt = 64;
    enum class Rule { Midpoint } rule = Rule::Midpoint;

    double dt() const { return (t1 - t0) / nt; }
    double sample(int j) const { return t0 + (j + 0.5) * dt(); }
    void validate() const;
};

/// Plancherel L2 norm: (vol * sum |f|^2)^{1/2}, vol = P^m.
double l2_norm(const SpectralField& f);

/// Spatial Riemann L^p norm, p in [1, inf).
double lp_space_norm(const PhysicalField& u, double p);

/// Max |u| over grid points.
double sup_norm(const PhysicalField& u);

/// Spacetime L^p norm of e^{it Delta} f0 over the time grid.
double spacetime_lp_norm(const SpectralField& f0, double p, const TimeGrid& tg);

/// Mixed L^q_t L^r_x norm of e^{it Delta} f0.
double mixed_norm(const SpectralField& f0, double q, double r, const TimeGrid& tg);

/// spacetime_lp_norm / l2_norm; throws ZeroData when the data vanishes.
double strichartz_ratio(const SpectralField& f0, double p, const TimeGrid& tg);

/// True when the grid cannot represent |u|^p alias-free for even integer p:
/// (p/2) * (per-direction support width in index units) >= G. A Riemann sum
/// of the pth power then folds high modes back; callers get a stderr warning.
bool aliasing_risk(const SpectralField& f, double p);

}  // namespace waveshell
