#include "waveshell/norms.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <set>
#include <string>

#include "waveshell/errors.hpp"

namespace waveshell {

void TimeGrid::validate() const {
    if (!(t1 > t0)) throw InvalidGeometry("TimeGrid: t1 must exceed t0");
    if (nt < 1) throw InvalidGeometry("TimeGrid: nt must be >= 1");
}

double l2_norm(const SpectralField& f) {
    f.validate();
    double s = 0.0;
    for (const auto& c : f.coef) s += std::norm(c);
    return std::sqrt(f.geom.domain_volume() * s);
}

double lp_space_norm(const PhysicalField& u, double p) {
    u.validate();
    if (!(p >= 1.0) || std::isinf(p))
        throw InvalidGeometry("lp_space_norm: p must lie in [1, inf), got " + std::to_string(p));
    const double cellvol = u.geom.cell_volume();
    double s = 0.0;
    if (p == 2.0) {
        for (const auto& c : u.samples) s += std::norm(c);
    } else if (p == 4.0) {
        for (const auto& c : u.samples) {
            const double m2 = std::norm(c);
            s += m2 * m2;
        }
    } else {
        for (const auto& c : u.samples) s += std::pow(std::abs(c), p);
    }
    return std::pow(s * cellvol, 1.0 / p);
}

double sup_norm(const PhysicalField& u) {
    u.validate();
    double m = 0.0;
    for (const auto& c : u.samples) m = std::max(m, std::abs(c));
    return m;
}

bool aliasing_risk(const SpectralField& f, double p) {
    const double half = p / 2.0;
    if (half != std::floor(half)) return false;  // only even integer powers are bandlimited
    const FrequencyLattice lat = build_lattice(f.geom);
    const int nd = f.geom.dims();
    std::vector<int> lo(static_cast<std::size_t>(nd), 0), hi(static_cast<std::size_t>(nd), -1);
    for (std::size_t flat = 0; flat < f.coef.size(); ++flat) {
        if (f.coef[flat] == std::complex<double>(0.0, 0.0)) continue;
        const auto idx = lat.unflatten(flat);
        for (int d = 0; d < nd; ++d) {
            auto du = static_cast<std::size_t>(d);
            if (hi[du] < lo[du]) {
                lo[du] = hi[du] = idx[du];
            } else {
                lo[du] = std::min(lo[du], idx[du]);
                hi[du] = std::max(hi[du], idx[du]);
            }
        }
    }
    for (int d = 0; d < nd; ++d) {
        auto du = static_cast<std::size_t>(d);
        if (hi[du] < lo[du]) return false;  // zero field
        const int width = hi[du] - lo[du];
        if (half * width >= f.geom.grid_sizes[du]) return true;
    }
    return false;
}

namespace {

// one warning per (grid shape, p) per process
void warn_if_aliased(const SpectralField& f, double p, const char* where) {
    if (!aliasing_risk(f, p)) return;
    std::string key = where;
    key += ':' + std::to_string(p);
    for (int g : f.geom.grid_sizes) key += 'x' + std::to_string(g);
    static std::set<std::string> seen;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (!seen.insert(key).second) return;
    }
    std::cerr << "waveshell: warning: " << where << " with p=" << p
              << " exceeds the grid's alias-free budget; the Riemann sum folds high modes\n";
}

}  // namespace

double spacetime_lp_norm(const SpectralField& f0, double p, const TimeGrid& tg) {
    f0.validate();
    tg.validate();
    if (!(p >= 1.0) || std::isinf(p))
        throw InvalidGeometry("spacetime_lp_norm: p must lie in [1, inf), got " + std::to_string(p));
    warn_if_aliased(f0, p, "spacetime_lp_norm");
    double acc = 0.0;
    for (int j = 0; j < tg.nt; ++j) {
        const double t = tg.sample(j);
        const double lp = lp_space_norm(to_physical(propagate(f0, t)), p);
        acc += std::pow(lp, p) * tg.dt();
    }
    return std::pow(acc, 1.0 / p);
}

double mixed_norm(const SpectralField& f0, double q, double r, const TimeGrid& tg) {
    f0.validate();
    tg.validate();
    if (!(q >= 1.0) || std::isinf(q))
        throw InvalidGeometry("mixed_norm: q must lie in [1, inf), got " + std::to_string(q));
    if (!(r >= 1.0) || std::isinf(r))
        throw InvalidGeometry("mixed_norm: r must lie in [1, inf), got " + std::to_string(r));
    warn_if_aliased(f0, r, "mixed_norm");
    double acc = 0.0;
    for (int j = 0; j < tg.nt; ++j) {
        const double t = tg.sample(j);
        const double lr = lp_space_norm(to_physical(propagate(f0, t)), r);
        acc += std::pow(lr, q) * tg.dt();
    }
    return std::pow(acc, 1.0 / q);
}

double strichartz_ratio(const SpectralField& f0, double p, const TimeGrid& tg) {
    const double l2 = l2_norm(f0);
    if (l2 == 0.0) throw ZeroData("strichartz_ratio: data has zero L2 norm");
    return spacetime_lp_norm(f0, p, tg) / l2;
}

}  // namespace waveshell
