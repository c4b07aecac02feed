#include "waveshell/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "waveshell/errors.hpp"
#include "waveshell/rng.hpp"
#include "waveshell/spectral.hpp"

namespace waveshell {

void ExperimentConfig::validate() const {
    geom.validate();
    time.validate();
    if (frequencies.size() < 2) throw Error("ExperimentConfig: need at least 2 frequencies");
    for (std::size_t i = 1; i < frequencies.size(); ++i)
        if (frequencies[i] <= frequencies[i - 1])
            throw Error("ExperimentConfig: N list must be strictly increasing");
    if (trials < 1) throw Error("ExperimentConfig: trials must be >= 1");
}

namespace {

std::uint64_t trial_seed(std::uint64_t base, double frequency, int trial) {
    return derive_stream(base, std::bit_cast<std::uint64_t>(frequency),
                         static_cast<std::uint64_t>(trial));
}

}  // namespace

std::vector<ScalingSample> scaling_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ScalingSample> out;
    out.reserve(cfg.frequencies.size());
    for (double N : cfg.frequencies) {
        ShellSpec shell = cfg.recipe.shell;
        shell.center = N;
        double best = 0.0, sum = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            SpectralField f;
            try {
                f = random_shell_data(cfg.geom, shell, cfg.recipe.distribution,
                                      trial_seed(cfg.base_seed, N, trial));
            } catch (const EmptyShell& e) {
                throw EmptyShell("scaling_experiment at N=" + std::to_string(N) + ": " + e.what());
            }
            const double ratio = strichartz_ratio(f, cfg.p, cfg.time);
            best = std::max(best, ratio);
            sum += ratio;
        }
        out.push_back({N, best, sum / cfg.trials});
    }
    return out;
}

ScalingFit fit_loglog(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2) throw Error("fit_loglog: need at least 2 samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(samples.size());
    std::vector<double> lx(samples.size()), ly(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].second > 0.0))
            throw NonpositiveSample("fit_loglog: sample C(" + std::to_string(samples[i].first) +
                                    ") = " + std::to_string(samples[i].second) + " is not positive");
        if (!(samples[i].first > 0.0))
            throw NonpositiveSample("fit_loglog: frequency " + std::to_string(samples[i].first) +
                                    " is not positive");
        lx[i] = std::log(samples[i].first);
        ly[i] = std::log(samples[i].second);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    ScalingFit fit;
    fit.count = samples.size();
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double pred = fit.intercept + fit.slope * lx[i];
        ss_res += (ly[i] - pred) * (ly[i] - pred);
        ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
    }
    // constant series (up to fp noise): no variance to explain
    const double constant_floor = 1e-20 * n * (1.0 + mean_y * mean_y);
    fit.r_squared = ss_tot > constant_floor ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return fit;
}

DecayResult decay_experiment(const GeometrySpec& geom, const StripSpec& strip, double sigma,
                             const std::vector<double>& times) {
    geom.validate();
    if (times.size() < 2) throw Error("decay_experiment: need at least 2 times");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw Error("decay_experiment: times must be positive");
        if (i > 0 && times[i] <= times[i - 1])
            throw Error("decay_experiment: times must be strictly increasing");
    }
    const SpectralField f = gaussian_strip_packet(geom, strip, sigma);

    // wrap-around guard: group velocity 2 xi, excursion over the window
    const FrequencyLattice lat = build_lattice(geom);
    const double t_max = times.back();
    std::vector<double> max_xi(static_cast<std::size_t>(geom.dims()), 0.0);
    for (std::size_t flat = 0; flat < f.coef.size(); ++flat) {
        if (f.coef[flat] == std::complex<double>(0.0, 0.0)) continue;
        const auto v = lat.frequency(flat);
        for (std::size_t d = 0; d < v.size(); ++d)
            max_xi[d] = std::max(max_xi[d], std::abs(v[d]));
    }
    for (int d = 0; d < geom.euclid_dims; ++d) {
        const double excursion = 2.0 * max_xi[static_cast<std::size_t>(d)] * t_max;
        if (excursion > geom.euclid_period / 2.0)
            throw WrapAround("decay_experiment: estimated excursion " + std::to_string(excursion) +
                             " in direction " + std::to_string(d) + " exceeds P/2 = " +
                             std::to_string(geom.euclid_period / 2.0));
    }

    DecayResult res;
    res.times = times;
    std::vector<std::pair<double, double>> pts;
    for (double t : times) {
        const double s = sup_norm(to_physical(propagate(f, t)));
        res.sup_norms.push_back(s);
        pts.emplace_back(t, s);
    }
    res.slope = fit_loglog(pts).slope;
    return res;
}

void check_admissible(double q, double r, int d) {
    const double sigma = 0.5 * (d - 1);
    if (std::isinf(r)) {
        if (q == 2.0 && sigma == 1.0)
            throw AdmissibilityError("(q,r) = (2,inf) is the excluded endpoint for sigma = 1");
        throw AdmissibilityError("r = inf is not supported by the grid norms (sigma = " +
                                 std::to_string(sigma) + ")");
    }
    if (!(q >= 2.0) || !(r >= 2.0))
        throw AdmissibilityError("(q,r) must satisfy q,r >= 2 (sigma = " + std::to_string(sigma) + ")");
    const double lhs = 1.0 / q;
    const double rhs = sigma * (0.5 - 1.0 / r);
    if (std::abs(lhs - rhs) > 1e-12)
        throw AdmissibilityError("(q,r) = (" + std::to_string(q) + "," + std::to_string(r) +
                                 ") is not sharp " + std::to_string(sigma) +
                                 "-admissible: 1/q = " + std::to_string(lhs) +
                                 " vs sigma(1/2 - 1/r) = " + std::to_string(rhs));
}

std::vector<std::pair<double, double>> mixed_norm_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    check_admissible(cfg.q, cfg.r, cfg.geom.dims());
    const StripSpec& strip = cfg.recipe.strip;
    const auto& a = strip.direction;
    const std::size_t nd = a.size();

    // deterministic unit vector orthogonal to a: Gram-Schmidt on the least
    // aligned coordinate axis
    std::size_t pivot = 0;
    double best = std::abs(a[0]);
    for (std::size_t d = 1; d < nd; ++d)
        if (std::abs(a[d]) < best) {
            best = std::abs(a[d]);
            pivot = d;
        }
    std::vector<double> perp(nd, 0.0);
    perp[pivot] = 1.0;
    double dot = a[pivot];
    double norm2 = 0.0;
    for (std::size_t d = 0; d < nd; ++d) {
        perp[d] -= dot * a[d];
        norm2 += perp[d] * perp[d];
    }
    for (std::size_t d = 0; d < nd; ++d) perp[d] /= std::sqrt(norm2);

    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < cfg.frequencies.size(); ++i) {
        const double N = cfg.frequencies[i];
        StripSpec shifted = strip;
        shifted.offset.assign(nd, 0.0);
        for (std::size_t d = 0; d < nd; ++d) shifted.offset[d] = N * perp[d];
        SpectralField f;
        try {
            f = random_strip_data(cfg.geom, shifted, cfg.recipe.distribution,
                                  trial_seed(cfg.base_seed, N, 0), cfg.recipe.envelope_sigma);
        } catch (const EmptyStrip& e) {
            throw EmptyStrip("mixed_norm_experiment at N=" + std::to_string(N) + ": " + e.what());
        }
        const double l2 = l2_norm(f);
        if (l2 == 0.0) throw ZeroData("mixed_norm_experiment: zero data at N=" + std::to_string(N));
        out.emplace_back(N, mixed_norm(f, cfg.q, cfg.r, cfg.time) / l2);
    }
    return out;
}

}  // namespace waveshell
