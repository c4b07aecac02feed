#include "waveshell/geometry.hpp"

#include <cmath>
#include <string>

#include "waveshell/errors.hpp"

namespace waveshell {

std::size_t GeometrySpec::total_points() const {
    std::size_t n = 1;
    for (int g : grid_sizes) n *= static_cast<std::size_t>(g);
    return n;
}

double GeometrySpec::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dims(); ++d) v *= direction_period(d) / grid_sizes[static_cast<std::size_t>(d)];
    return v;
}

double GeometrySpec::domain_volume() const {
    return std::pow(euclid_period, euclid_dims);
}

void GeometrySpec::validate() const {
    if (euclid_dims < 0) throw InvalidGeometry("GeometrySpec: m must be >= 0, got " + std::to_string(euclid_dims));
    if (torus_dims < 0) throw InvalidGeometry("GeometrySpec: n must be >= 0, got " + std::to_string(torus_dims));
    if (dims() < 1) throw InvalidGeometry("GeometrySpec: m + n must be >= 1");
    if (euclid_dims > 0 && !(euclid_period > 0.0))
        throw InvalidGeometry("GeometrySpec: euclid_period must be > 0, got " + std::to_string(euclid_period));
    if (static_cast<int>(grid_sizes.size()) != dims())
        throw InvalidGeometry("GeometrySpec: grid_sizes needs m + n = " + std::to_string(dims()) +
                              " entries, got " + std::to_string(grid_sizes.size()));
    for (std::size_t i = 0; i < grid_sizes.size(); ++i)
        if (grid_sizes[i] < 2)
            throw InvalidGeometry("GeometrySpec: grid_sizes[" + std::to_string(i) + "] must be >= 2, got " +
                                  std::to_string(grid_sizes[i]));
    if (!(cell_volume() > 0.0)) throw InvalidGeometry("GeometrySpec: cell volume must be positive");
}

FrequencyLattice build_lattice(const GeometrySpec& geom) {
    geom.validate();
    FrequencyLattice lat;
    lat.geom = geom;
    lat.freqs.resize(static_cast<std::size_t>(geom.dims()));
    for (int d = 0; d < geom.dims(); ++d) {
        const int g = geom.grid_sizes[static_cast<std::size_t>(d)];
        const double period = geom.direction_period(d);
        auto& f = lat.freqs[static_cast<std::size_t>(d)];
        f.resize(static_cast<std::size_t>(g));
        for (int i = 0; i < g; ++i) f[static_cast<std::size_t>(i)] = static_cast<double>(i - g / 2) / period;
    }
    return lat;
}

std::vector<int> FrequencyLattice::unflatten(std::size_t flat) const {
    const int nd = geom.dims();
    std::vector<int> idx(static_cast<std::size_t>(nd));
    for (int d = nd - 1; d >= 0; --d) {
        const std::size_t g = static_cast<std::size_t>(geom.grid_sizes[static_cast<std::size_t>(d)]);
        idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % g);
        flat /= g;
    }
    return idx;
}

std::vector<double> FrequencyLattice::frequency(std::size_t flat) const {
    const auto idx = unflatten(flat);
    std::vector<double> v(idx.size());
    for (std::size_t d = 0; d < idx.size(); ++d) v[d] = freqs[d][static_cast<std::size_t>(idx[d])];
    return v;
}

double FrequencyLattice::norm2(std::size_t flat) const {
    const auto v = frequency(flat);
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

void ShellSpec::validate(int dims) const {
    if (!(center >= 0.0)) throw InvalidGeometry("ShellSpec: center c_* must be >= 0");
    if (!(half_width > 0.0)) throw InvalidGeometry("ShellSpec: half_width w must be > 0");
    if (ball) {
        if (!(ball->radius > 0.0)) throw InvalidGeometry("ShellSpec: ball radius must be > 0");
        if (static_cast<int>(ball->center.size()) != dims)
            throw InvalidGeometry("ShellSpec: ball center needs " + std::to_string(dims) +
                                  " coordinates, got " + std::to_string(ball->center.size()));
    }
}

void StripSpec::validate(int dims) const {
    if (static_cast<int>(direction.size()) != dims)
        throw InvalidGeometry("StripSpec: direction needs " + std::to_string(dims) +
                              " coordinates, got " + std::to_string(direction.size()));
    double n2 = 0.0;
    for (double x : direction) n2 += x * x;
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw InvalidGeometry("StripSpec: direction must be a unit vector, |a| = " +
                              std::to_string(std::sqrt(n2)));
    if (!(half_width > 0.0)) throw InvalidGeometry("StripSpec: half_width M must be > 0");
    if (!offset.empty() && static_cast<int>(offset.size()) != dims)
        throw InvalidGeometry("StripSpec: offset needs " + std::to_string(dims) +
                              " coordinates, got " + std::to_string(offset.size()));
}

namespace {

// Visit every lattice point in flat order, maintaining the frequency vector
// incrementally (odometer walk).
template <typename Visitor>
void for_each_point(const FrequencyLattice& lat, Visitor&& visit) {
    const int nd = lat.geom.dims();
    const auto& gs = lat.geom.grid_sizes;
    std::vector<int> idx(static_cast<std::size_t>(nd), 0);
    std::vector<double> v(static_cast<std::size_t>(nd));
    for (int d = 0; d < nd; ++d) v[static_cast<std::size_t>(d)] = lat.freqs[static_cast<std::size_t>(d)][0];
    const std::size_t total = lat.total_points();
    for (std::size_t flat = 0; flat < total; ++flat) {
        visit(flat, v);
        for (int d = nd - 1; d >= 0; --d) {
            auto du = static_cast<std::size_t>(d);
            if (++idx[du] < gs[du]) {
                v[du] = lat.freqs[du][static_cast<std::size_t>(idx[du])];
                break;
            }
            idx[du] = 0;
            v[du] = lat.freqs[du][0];
        }
    }
}

}  // namespace

std::vector<std::size_t> shell_indices(const FrequencyLattice& lattice, const ShellSpec& shell) {
    shell.validate(lattice.geom.dims());
    const double lo = shell.center - shell.half_width;
    const double hi = shell.center + shell.half_width;
    const bool has_ball = shell.ball.has_value();
    const double r2 = has_ball ? shell.ball->radius * shell.ball->radius : 0.0;
    std::vector<std::size_t> out;
    for_each_point(lattice, [&](std::size_t flat, const std::vector<double>& v) {
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        const double nrm = std::sqrt(n2);
        if (nrm < lo || nrm > hi) return;
        if (has_ball) {
            double d2 = 0.0;
            for (std::size_t d = 0; d < v.size(); ++d) {
                const double dx = v[d] - shell.ball->center[d];
                d2 += dx * dx;
            }
            if (d2 > r2) return;
        }
        out.push_back(flat);
    });
    return out;
}

std::vector<std::size_t> strip_indices(const FrequencyLattice& lattice, const StripSpec& strip) {
    strip.validate(lattice.geom.dims());
    const auto& a = strip.direction;
    double off_dot_a = 0.0;
    if (!strip.offset.empty())
        for (std::size_t d = 0; d < a.size(); ++d) off_dot_a += a[d] * strip.offset[d];
    std::vector<std::size_t> out;
    for_each_point(lattice, [&](std::size_t flat, const std::vector<double>& v) {
        double dot = 0.0;
        for (std::size_t d = 0; d < v.size(); ++d) dot += a[d] * v[d];
        if (std::abs(dot - off_dot_a) <= strip.half_width) out.push_back(flat);
    });
    return out;
}

}  // namespace waveshell
