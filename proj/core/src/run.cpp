#include "waveshell/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "waveshell/csv.hpp"
#include "waveshell/datagen.hpp"
#include "waveshell/errors.hpp"
#include "waveshell/experiments.hpp"
#include "waveshell/measure.hpp"
#include "waveshell/norms.hpp"
#include "waveshell/rng.hpp"
#include "waveshell/spectral.hpp"
#include "waveshell/version.hpp"
#include "waveshell/weyl.hpp"

namespace waveshell {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601ULL;

struct DriverResult {
    int status = 0;
    std::vector<std::string> outputs;
    std::string summary;
};

struct Band {
    double lo, hi;
};

std::optional<Band> scaling_band(const std::string& preset) {
    if (preset == "r2t" || preset == "euclid2" || preset == "euclid3") return Band{-0.10, 0.10};
    if (preset == "rt2") return Band{0.08, 0.30};
    if (preset == "t3") return Band{0.18, 0.45};
    return std::nullopt;
}

std::optional<Band> decay_band(const std::string& preset) {
    if (preset == "euclid2") return Band{-0.65, -0.35};
    if (preset == "euclid3") return Band{-1.2, -0.8};
    return std::nullopt;
}

void set_grid(Config& cfg, std::initializer_list<int> grid) {
    std::vector<double> g;
    for (int v : grid) g.push_back(v);
    cfg.set_list("geometry", "grid", g);
}

GeometrySpec geometry_from(const Config& cfg) {
    if (!cfg.has("geometry", "m"))
        throw ConfigError("config is missing the [geometry] section; provide one or use --preset");
    GeometrySpec geom;
    geom.euclid_dims = static_cast<int>(cfg.get_int("geometry", "m"));
    geom.torus_dims = static_cast<int>(cfg.get_int("geometry", "n"));
    geom.euclid_period = cfg.get_double("geometry", "period", 16.0);
    for (double g : cfg.get_list("geometry", "grid")) geom.grid_sizes.push_back(static_cast<int>(g));
    geom.validate();
    return geom;
}

Distribution parse_distribution(const std::string& name) {
    if (name == "unit-modulus-random-phase") return Distribution::UnitModulusRandomPhase;
    if (name == "complex-gaussian") return Distribution::ComplexGaussian;
    throw ConfigError("unknown distribution '" + name +
                      "' (expected unit-modulus-random-phase or complex-gaussian)");
}

Statistic parse_statistic(const std::string& name) {
    if (name == "max") return Statistic::Max;
    if (name == "mean") return Statistic::Mean;
    throw ConfigError("unknown statistic '" + name + "' (expected max or mean)");
}

TimeGrid time_from(Config& cfg, double t0, double t1, int nt) {
    TimeGrid tg;
    tg.t0 = cfg.get_double("time", "t0", t0);
    tg.t1 = cfg.get_double("time", "t1", t1);
    tg.nt = static_cast<int>(cfg.get_int("time", "nt", nt));
    cfg.set_double("time", "t0", tg.t0);
    cfg.set_double("time", "t1", tg.t1);
    cfg.set_int("time", "nt", tg.nt);
    tg.validate();
    return tg;
}

// CLI convenience: accept any nonzero direction and normalize it
std::vector<double> unit_direction(std::vector<double> a) {
    double n2 = 0.0;
    for (double x : a) n2 += x * x;
    if (!(n2 > 0.0)) throw ConfigError("strip_dir must be a nonzero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : a) x *= inv;
    return a;
}

std::string format_fixed(double v, int prec = 4) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(prec);
    ss << v;
    return ss.str();
}

// ---------------------------------------------------------------- scaling --

DriverResult drive_scaling(Config& cfg, const std::string& outdir, const std::string& preset) {
    ExperimentConfig ec;
    ec.geom = geometry_from(cfg);
    ec.recipe.kind = DataRecipe::Kind::ShellRandom;
    ec.recipe.shell.half_width = cfg.get_double("data", "width", 1.0);
    if (cfg.has("data", "ball_radius")) {
        BallSpec ball;
        ball.radius = cfg.get_double("data", "ball_radius");
        const std::vector<double> zero(static_cast<std::size_t>(ec.geom.dims()), 0.0);
        ball.center = cfg.has("data", "ball_center") ? cfg.get_list("data", "ball_center") : zero;
        cfg.set_list("data", "ball_center", ball.center);
        ec.recipe.shell.ball = ball;
    }
    ec.recipe.distribution =
        parse_distribution(cfg.get_string("data", "distribution", "unit-modulus-random-phase"));
    ec.base_seed = cfg.get_u64("data", "seed", kDefaultSeed);
    ec.time = time_from(cfg, 0.0, 1.0, 64);
    ec.p = cfg.get_double("experiment", "p", 4.0);
    ec.frequencies = cfg.get_list("experiment", "N_list", {4.0, 8.0, 16.0, 32.0});
    ec.trials = static_cast<int>(cfg.get_int("experiment", "trials", 5));
    ec.statistic = parse_statistic(cfg.get_string("experiment", "statistic", "max"));

    cfg.set("data", "kind", "shell-random");
    cfg.set_double("data", "width", ec.recipe.shell.half_width);
    cfg.set("data", "distribution", ec.recipe.distribution == Distribution::UnitModulusRandomPhase
                                        ? "unit-modulus-random-phase"
                                        : "complex-gaussian");
    cfg.set_u64("data", "seed", ec.base_seed);
    cfg.set_double("experiment", "p", ec.p);
    cfg.set_list("experiment", "N_list", ec.frequencies);
    cfg.set_int("experiment", "trials", ec.trials);
    cfg.set("experiment", "statistic", ec.statistic == Statistic::Max ? "max" : "mean");

    const auto samples = scaling_experiment(ec);

    CsvWriter csv(outdir + "/scaling.csv", "waveshell.scaling.v1",
                  {"N", "ratio_max", "ratio_mean", "trials"});
    std::vector<std::pair<double, double>> fit_pts;
    for (const auto& s : samples) {
        csv.row({s.frequency, s.ratio_max, s.ratio_mean, static_cast<double>(ec.trials)});
        fit_pts.emplace_back(s.frequency, s.statistic_value(ec.statistic));
    }
    const ScalingFit fit = fit_loglog(fit_pts);

    DriverResult res;
    res.outputs.push_back("scaling.csv");
    std::ostringstream out;
    out << "scaling: " << samples.size() << " frequencies, " << ec.trials << " trials each\n";
    for (const auto& s : samples)
        out << "  N=" << s.frequency << "  C_max=" << format_fixed(s.ratio_max)
            << "  C_mean=" << format_fixed(s.ratio_mean) << "\n";
    out << "  fit: alpha=" << format_fixed(fit.slope) << " intercept=" << format_fixed(fit.intercept)
        << " R2=" << format_fixed(fit.r_squared) << "\n";
    if (const auto band = scaling_band(preset)) {
        const bool ok = fit.slope >= band->lo && fit.slope <= band->hi;
        out << "  band [" << band->lo << ", " << band->hi << "]: " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) res.status = 1;
    }
    res.summary = out.str();
    return res;
}

// ------------------------------------------------------------------ decay --

DriverResult drive_decay(Config& cfg, const std::string& outdir, const std::string& preset) {
    const GeometrySpec geom = geometry_from(cfg);
    StripSpec strip;
    strip.direction = unit_direction(cfg.get_list("data", "strip_dir"));
    strip.half_width = cfg.get_double("data", "strip_halfwidth", 0.1);
    const double sigma = cfg.get_double("data", "envelope_sigma", 0.5);
    cfg.set_list("data", "strip_dir", strip.direction);
    cfg.set_double("data", "strip_halfwidth", strip.half_width);
    cfg.set_double("data", "envelope_sigma", sigma);
    cfg.set("data", "kind", "strip-random");

    // decay times form a geometric ladder from t0 to t1 with nt rungs
    const double t0 = cfg.get_double("time", "t0", 1.0);
    const double t1 = cfg.get_double("time", "t1", 8.0);
    const int nt = static_cast<int>(cfg.get_int("time", "nt", 4));
    cfg.set_double("time", "t0", t0);
    cfg.set_double("time", "t1", t1);
    cfg.set_int("time", "nt", nt);
    if (!(t0 > 0.0) || nt < 2) throw ConfigError("decay: need t0 > 0 and nt >= 2");
    std::vector<double> times;
    for (int i = 0; i < nt; ++i) times.push_back(t0 * std::pow(t1 / t0, double(i) / (nt - 1)));

    const DecayResult dr = decay_experiment(geom, strip, sigma, times);

    CsvWriter csv(outdir + "/decay.csv", "waveshell.decay.v1", {"t", "sup_norm"});
    for (std::size_t i = 0; i < dr.times.size(); ++i) csv.row({dr.times[i], dr.sup_norms[i]});

    DriverResult res;
    res.outputs.push_back("decay.csv");
    std::ostringstream out;
    out << "decay: strip halfwidth " << strip.half_width << ", envelope sigma " << sigma << "\n";
    for (std::size_t i = 0; i < dr.times.size(); ++i)
        out << "  t=" << dr.times[i] << "  sup=" << format_fixed(dr.sup_norms[i], 6) << "\n";
    out << "  fit: slope=" << format_fixed(dr.slope) << "\n";
    if (const auto band = decay_band(preset)) {
        const bool ok = dr.slope >= band->lo && dr.slope <= band->hi;
        out << "  band [" << band->lo << ", " << band->hi << "]: " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) res.status = 1;
    }
    res.summary = out.str();
    return res;
}

// ------------------------------------------------------------------ mixed --

DriverResult drive_mixed(Config& cfg, const std::string& outdir, const std::string& preset) {
    ExperimentConfig ec;
    ec.geom = geometry_from(cfg);
    ec.recipe.kind = DataRecipe::Kind::StripRandom;
    ec.recipe.strip.direction = unit_direction(cfg.get_list("data", "strip_dir"));
    ec.recipe.strip.half_width = cfg.get_double("data", "strip_halfwidth", 1.0);
    ec.recipe.envelope_sigma = cfg.get_double("data", "envelope_sigma", 0.5);
    ec.recipe.distribution =
        parse_distribution(cfg.get_string("data", "distribution", "unit-modulus-random-phase"));
    ec.base_seed = cfg.get_u64("data", "seed", kDefaultSeed);
    ec.time = time_from(cfg, 0.0, 1.0, 64);
    ec.q = cfg.get_double("experiment", "q", 8.0);
    ec.r = cfg.get_double("experiment", "r", 4.0);
    ec.frequencies = cfg.get_list("experiment", "N_list", {4.0, 8.0, 16.0, 32.0});
    ec.trials = 1;

    cfg.set_list("data", "strip_dir", ec.recipe.strip.direction);
    cfg.set_double("data", "strip_halfwidth", ec.recipe.strip.half_width);
    cfg.set_double("data", "envelope_sigma", ec.recipe.envelope_sigma);
    cfg.set("data", "kind", "strip-random");
    cfg.set("data", "distribution", ec.recipe.distribution == Distribution::UnitModulusRandomPhase
                                        ? "unit-modulus-random-phase"
                                        : "complex-gaussian");
    cfg.set_u64("data", "seed", ec.base_seed);
    cfg.set_double("experiment", "q", ec.q);
    cfg.set_double("experiment", "r", ec.r);
    cfg.set_list("experiment", "N_list", ec.frequencies);

    const auto rows = mixed_norm_experiment(ec);

    CsvWriter csv(outdir + "/mixed.csv", "waveshell.mixed.v1", {"N", "ratio"});
    double lo = rows.front().second, hi = rows.front().second;
    for (const auto& [N, ratio] : rows) {
        csv.row({N, ratio});
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }

    DriverResult res;
    res.outputs.push_back("mixed.csv");
    std::ostringstream out;
    out << "mixed norm: q=" << ec.q << " r=" << ec.r << "\n";
    for (const auto& [N, ratio] : rows) out << "  N=" << N << "  ratio=" << format_fixed(ratio, 6) << "\n";
    out << "  max/min = " << format_fixed(hi / lo) << "\n";
    if (!preset.empty()) {
        const bool ok = hi / lo <= 1.5;
        out << "  band max/min <= 1.5: " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) res.status = 1;
    }
    res.summary = out.str();
    return res;
}

// ---------------------------------------------------------------- measure --

// Draw (a, b) in V subset R^2 x Z: both in the width-2 shell at c_*, third
// coordinates integer, |a - b| <= 2 c_*/100. Since |a - b| < 1 the integer
// coordinates coincide, so the chord is horizontal.
void draw_instance(CounterRng& rng, double c_star, std::array<double, 3>& a,
                   std::array<double, 3>& b) {
    for (;;) {
        double ux, uy, uz;
        rng.next_sphere_dir(ux, uy, uz);
        const double ra = rng.next_uniform(c_star - 1.0, c_star + 1.0);
        a = {ra * ux, ra * uy, std::round(ra * uz)};
        const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        if (na < c_star - 1.0 || na > c_star + 1.0) continue;
        const double phi = rng.next_uniform(0.0, 2.0 * M_PI);
        const double step = rng.next_uniform(0.0, 2.0 * c_star / 100.0);
        b = {a[0] + step * std::cos(phi), a[1] + step * std::sin(phi), a[2]};
        const double rb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        if (rb >= c_star - 1.0 && rb <= c_star + 1.0) return;
    }
}

DriverResult drive_measure(Config& cfg, const std::string& outdir, const std::string&) {
    const std::vector<double> c_stars = cfg.get_list("measure", "c_star", {8.0, 16.0, 32.0});
    const std::vector<double> t_list = cfg.get_list("measure", "T_list", {10.0, 100.0, 1000.0});
    const auto mc_samples = static_cast<std::size_t>(cfg.get_int("measure", "mc_samples", 200000));
    const double resolution = cfg.get_double("measure", "slice_resolution", 256.0);
    const int per_cstar = static_cast<int>(cfg.get_int("measure", "trials", 7));
    const std::uint64_t seed = cfg.get_u64("measure", "seed", kDefaultSeed);
    cfg.set_list("measure", "c_star", c_stars);
    cfg.set_list("measure", "T_list", t_list);
    cfg.set_int("measure", "mc_samples", static_cast<long long>(mc_samples));
    cfg.set_double("measure", "slice_resolution", resolution);
    cfg.set_int("measure", "trials", per_cstar);
    cfg.set_u64("measure", "seed", seed);
    const double cell = 1.0 / resolution;

    CsvWriter csv(outdir + "/measure.csv", "waveshell.measure.v1",
                  {"a1", "a2", "a3", "b1", "b2", "b3", "c_star", "T", "vol", "vol_stderr",
                   "slice_sum", "slice_sup", "ratio"});

    double worst_ratio = 0.0, worst_decay = 1.0;
    int instances = 0;
    for (double c_star : c_stars) {
        CounterRng rng(derive_stream(seed, 0x6d656173757265ULL, static_cast<std::uint64_t>(c_star)));
        for (int inst = 0; inst < per_cstar; ++inst) {
            std::array<double, 3> a{}, b{};
            draw_instance(rng, c_star, a, b);
            ++instances;
            double base_tsum = -1.0;
            for (double T : t_list) {
                QuadricShellSet set{a, b, c_star, T};
                const double ssum = slice_sum(set, cell);
                const double ssup = slice_sup(set, cell);
                const auto vol = mc_volume(set, default_region(set), mc_samples,
                                           derive_stream(seed, instances, static_cast<std::uint64_t>(T)));
                const double denom = vol.value + ssup;
                const double ratio =
                    denom > 0.0 ? ssum / denom : (ssum > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
                csv.row({a[0], a[1], a[2], b[0], b[1], b[2], c_star, T, vol.value, vol.std_error,
                         ssum, ssup, ratio});
                worst_ratio = std::max(worst_ratio, ratio);
                const double tsum = T * ssum;
                if (T == t_list.front()) {
                    base_tsum = tsum;
                } else if (base_tsum > 0.0) {
                    const double rel = tsum / base_tsum;
                    worst_decay = std::max(worst_decay, std::max(rel, rel > 0.0 ? 1.0 / rel : 1e9));
                } else if (tsum > 0.0) {
                    worst_decay = 1e9;  // appeared from nothing
                }
            }
        }
    }

    DriverResult res;
    res.outputs.push_back("measure.csv");
    std::ostringstream out;
    out << "measure: " << instances << " instances, T in {";
    for (std::size_t i = 0; i < t_list.size(); ++i) out << (i ? "," : "") << t_list[i];
    out << "}\n";
    out << "  max slice-bound ratio = " << format_fixed(worst_ratio) << " (bound 10)\n";
    out << "  worst T*slice_sum drift = " << format_fixed(worst_decay) << " (bound 3)\n";
    const bool ok = worst_ratio <= 10.0 && worst_decay <= 3.0;
    out << "  bands: " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) res.status = 1;
    res.summary = out.str();
    return res;
}

// ------------------------------------------------------------------- weyl --

DriverResult drive_weyl(Config& cfg, const std::string& outdir, const std::string&) {
    const int d = static_cast<int>(cfg.get_int("weyl", "d", 2));
    const double p_default = 2.0 * (d + 1) / (d - 1);
    const double p = cfg.get_double("weyl", "p", p_default);
    std::vector<int> cutoffs;
    for (double k : cfg.get_list("weyl", "K_list", {8.0, 16.0, 32.0, 64.0, 128.0}))
        cutoffs.push_back(static_cast<int>(k));
    cfg.set_int("weyl", "d", d);
    cfg.set_double("weyl", "p", p);
    {
        std::vector<double> ks;
        for (int k : cutoffs) ks.push_back(k);
        cfg.set_list("weyl", "K_list", ks);
    }

    const MomentSeries series = nested_moment_series(cutoffs, p, d);

    CsvWriter csv(outdir + "/weyl.csv", "waveshell.weyl.v1", {"d", "p", "K", "moment", "normalized"});
    std::vector<std::pair<double, double>> logfit;
    bool nondecreasing = true;
    for (std::size_t i = 0; i < series.cutoffs.size(); ++i) {
        csv.row({static_cast<double>(d), p, static_cast<double>(series.cutoffs[i]), series.moments[i],
                 series.normalized[i]});
        logfit.emplace_back(std::log(static_cast<double>(series.cutoffs[i])), series.normalized[i]);
        if (i > 0 && series.normalized[i] < series.normalized[i - 1]) nondecreasing = false;
    }
    // linear fit of normalized moment against log K
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(logfit.size());
    for (const auto& [x, y] : logfit) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (const auto& [x, y] : logfit) {
        ss_res += (y - intercept - slope * x) * (y - intercept - slope * x);
        ss_tot += (y - sy / n) * (y - sy / n);
    }
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

    DriverResult res;
    res.outputs.push_back("weyl.csv");
    std::ostringstream out;
    out << "weyl: d=" << d << " p=" << p << "\n";
    for (std::size_t i = 0; i < series.cutoffs.size(); ++i)
        out << "  K=" << series.cutoffs[i] << "  moment=" << format_fixed(series.moments[i], 1)
            << "  normalized=" << format_fixed(series.normalized[i]) << "\n";
    out << "  normalized vs log K: slope=" << format_fixed(slope) << " R2=" << format_fixed(r2)
        << " nondecreasing=" << (nondecreasing ? "yes" : "no") << "\n";
    const bool ok = nondecreasing && r2 >= 0.9;
    out << "  log-growth check (nondecreasing, R2 >= 0.9): " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) res.status = 1;
    res.summary = out.str();
    return res;
}

// -------------------------------------------------------- counterexample --

DriverResult drive_counterexample(Config& cfg, const std::string& outdir, const std::string&) {
    const int d = static_cast<int>(cfg.get_int("weyl", "d", 2));
    const double n1 = cfg.get_double("data", "c_star", 32.0);
    const double n2 = cfg.get_double("data", "ball_radius", 32.0);
    cfg.set_int("weyl", "d", d);
    cfg.set_double("data", "c_star", n1);
    cfg.set_double("data", "ball_radius", n2);
    cfg.set("data", "kind", "counterexample");

    GeometrySpec geom;
    if (cfg.has("geometry", "m")) {
        geom = geometry_from(cfg);
    } else {
        geom.euclid_dims = 1;
        geom.torus_dims = d - 1;
        geom.euclid_period = 512.0;
        int g1 = 2;
        while (g1 / 2 < geom.euclid_period * (n1 + 1.0)) g1 *= 2;
        geom.grid_sizes.assign(static_cast<std::size_t>(d), 16);
        geom.grid_sizes[0] = g1;
        cfg.set_int("geometry", "m", geom.euclid_dims);
        cfg.set_int("geometry", "n", geom.torus_dims);
        cfg.set_double("geometry", "period", geom.euclid_period);
        std::vector<double> gl;
        for (int g : geom.grid_sizes) gl.push_back(g);
        cfg.set_list("geometry", "grid", gl);
    }

    const SpectralField f = counterexample_data(geom, n1, n2, d);
    std::size_t nonzero = 0;
    for (const auto& c : f.coef)
        if (c != std::complex<double>(0.0, 0.0)) ++nonzero;
    const double l2 = l2_norm(f);
    const double l2_analytic = std::sqrt(geom.domain_volume() * static_cast<double>(nonzero));
    const int K = counterexample_box_side(n2, d);

    const double p = 2.0 * (d + 1) / (d - 1);
    const double ef0 = euclid_factor(p, 0.0);
    const double ef_half = euclid_factor(p, 0.5);
    const double ef1 = euclid_factor(p, 1.0);
    const double ef_min_ratio = std::min(ef_half, ef1) / ef0;
    const MomentSeries single = nested_moment_series({K}, p, d);
    const double nested = single.moments[0];
    const double normalized = single.normalized[0];

    CsvWriter csv(outdir + "/counterexample.csv", "waveshell.counterexample.v1",
                  {"quantity", "value"});
    csv.row_raw({"d", std::to_string(d)});
    csv.row_raw({"N1", format_double(n1)});
    csv.row_raw({"N2", format_double(n2)});
    csv.row_raw({"torus_box_side", std::to_string(K)});
    csv.row_raw({"nonzero_coefficients", std::to_string(nonzero)});
    csv.row_raw({"l2_norm", format_double(l2)});
    csv.row_raw({"l2_analytic", format_double(l2_analytic)});
    csv.row_raw({"euclid_factor_t0", format_double(ef0)});
    csv.row_raw({"euclid_factor_t0.5", format_double(ef_half)});
    csv.row_raw({"euclid_factor_t1", format_double(ef1)});
    csv.row_raw({"nested_moment_K", format_double(nested)});
    csv.row_raw({"nested_normalized_K", format_double(normalized)});

    DriverResult res;
    res.outputs.push_back("counterexample.csv");
    const bool l2_ok = std::abs(l2 - l2_analytic) <= 1e-10 * std::max(1.0, l2_analytic);
    const bool ef_ok = ef_min_ratio >= 0.9;
    std::ostringstream out;
    out << "counterexample: d=" << d << " N1=" << n1 << " N2=" << n2 << " (K=" << K << ")\n";
    out << "  nonzero coefficients: " << nonzero << "\n";
    out << "  L2 = " << format_fixed(l2, 8) << " vs analytic " << format_fixed(l2_analytic, 8)
        << (l2_ok ? " (ok)" : " (MISMATCH)") << "\n";
    out << "  euclid factor: t=0 " << format_double(ef0) << ", min ratio over t in [0,1] "
        << format_fixed(ef_min_ratio) << (ef_ok ? " (>= 0.9)" : " (BELOW 0.9)") << "\n";
    out << "  nested moment at K=" << K << ": " << format_fixed(nested, 2)
        << " normalized " << format_fixed(normalized) << "\n";
    if (!l2_ok || !ef_ok) res.status = 1;
    res.summary = out.str();
    return res;
}

// --------------------------------------------------------------- selftest --

DriverResult drive_selftest(Config&, const std::string&, const std::string&) {
    std::ostringstream out;
    int failures = 0;
    const auto check = [&](const char* name, bool ok) {
        out << "  [" << (ok ? "PASS" : "FAIL") << "] " << name << "\n";
        if (!ok) ++failures;
    };

    {
        GeometrySpec g{0, 1, 1.0, {4}};
        const auto lat = build_lattice(g);
        check("torus lattice G=4 is {-2,-1,0,1}",
              lat.freqs[0] == std::vector<double>({-2.0, -1.0, 0.0, 1.0}));
    }
    {
        GeometrySpec g{1, 0, 8.0, {4}};
        const auto lat = build_lattice(g);
        check("euclid lattice P=8 G=4 spacing 1/8",
              lat.freqs[0] == std::vector<double>({-0.25, -0.125, 0.0, 0.125}));
    }
    {
        GeometrySpec g{0, 1, 1.0, {8}};
        SpectralField f = zero_field(g);
        f.coef[static_cast<std::size_t>(4 + 1)] = 1.0;  // mode k=1
        const auto u = to_physical(f);
        bool ok = true;
        for (int j = 0; j < 8; ++j) {
            const double ph = 2.0 * M_PI * j / 8.0;
            ok = ok && std::abs(u.samples[static_cast<std::size_t>(j)] -
                                std::complex<double>(std::cos(ph), std::sin(ph))) < 1e-12;
        }
        check("single torus mode synthesizes the plane wave", ok);
        const auto g2 = propagate(f, 0.5);
        check("mode |k|^2=1 at t=0.5 flips sign",
              std::abs(g2.coef[5] - std::complex<double>(-1.0, 0.0)) < 1e-12);
        check("propagate at t=0 is the identity", propagate(f, 0.0).coef == f.coef);
    }
    {
        GeometrySpec g{1, 1, 4.0, {8, 8}};
        SpectralField f = zero_field(g);
        CounterRng rng(42);
        for (auto& c : f.coef) c = rng.next_complex_gaussian();
        const auto round = to_spectral(to_physical(f));
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < f.coef.size(); ++i) {
            err += std::norm(round.coef[i] - f.coef[i]);
            ref += std::norm(f.coef[i]);
        }
        check("transform roundtrip within 1e-12", std::sqrt(err / ref) < 1e-12);
        const double n0 = l2_norm(f);
        const double n1 = l2_norm(propagate(f, 0.37));
        check("propagator unitary within 1e-10", std::abs(n1 - n0) <= 1e-10 * n0);
        check("Plancherel matches physical Riemann sum within 1e-10",
              std::abs(lp_space_norm(to_physical(f), 2.0) - n0) <= 1e-10 * n0);
    }
    {
        std::vector<std::pair<double, double>> pts;
        for (double N : {2.0, 4.0, 8.0}) pts.emplace_back(N, 3.0 * std::sqrt(N));
        const auto fit = fit_loglog(pts);
        check("log-log fit recovers exponent 0.5 exactly",
              std::abs(fit.slope - 0.5) < 1e-12 && std::abs(fit.r_squared - 1.0) < 1e-12);
    }
    {
        check("weyl sum at y=t=0 equals K", std::abs(weyl_sum(5, 0.0, 0.0) - 5.0) < 1e-12);
        check("cube roots of unity cancel", std::abs(weyl_sum(3, 1.0 / 3.0, 0.0)) < 1e-12);
        check("quartic moment K=1 is 1", std::abs(quartic_moment_plain(1) - 1.0) < 1e-8);
        check("quartic moment K=2 is 6", std::abs(quartic_moment_plain(2) - 6.0) < 1e-8);
    }
    {
        check("monotone list has 0 changes", monotonicity_changes({1, 2, 3, 4}) == 0);
        check("single bump has 1 change", monotonicity_changes({1, 3, 2}) == 1);
    }
    {
        QuadricShellSet set{{16, 0, 0}, {16, 0, 0}, 16.0, 100.0};
        check("chord endpoint belongs to its own quadric set", membership(set, {16, 0, 0}));
        check("radius c_*+2 is outside the shell", !membership(set, {18, 0, 0}));
    }

    DriverResult res;
    res.summary = "selftest:\n" + out.str() +
                  (failures ? "  " + std::to_string(failures) + " check(s) failed\n"
                            : "  all checks passed\n");
    res.status = failures ? 1 : 0;
    return res;
}

}  // namespace

Config preset_config(const std::string& subcommand, const std::string& preset, bool full) {
    Config cfg;
    if (preset.empty()) return cfg;
    const auto geom = [&](int m, int n, double period, std::initializer_list<int> grid) {
        cfg.set_int("geometry", "m", m);
        cfg.set_int("geometry", "n", n);
        cfg.set_double("geometry", "period", period);
        set_grid(cfg, grid);
    };
    if (subcommand == "scaling") {
        if (preset == "r2t") {
            if (full) geom(2, 1, 2.0, {256, 256, 32});
            else geom(2, 1, 2.0, {128, 128, 16});
        } else if (preset == "rt2") {
            if (full) geom(1, 2, 2.0, {256, 32, 32});
            else geom(1, 2, 2.0, {128, 32, 32});
        } else if (preset == "t3") {
            if (full) geom(0, 3, 1.0, {64, 64, 64});
            else {
                geom(0, 3, 1.0, {32, 32, 32});
                // a 32^3 lattice caps |k| below 28, so the N=32 shell is empty
                cfg.set_list("experiment", "N_list", {4.0, 8.0, 16.0});
            }
        } else if (preset == "euclid2") {
            if (full) geom(2, 0, 4.0, {512, 512});
            else geom(2, 0, 4.0, {256, 256});
        } else if (preset == "euclid3") {
            if (full) geom(3, 0, 3.0, {192, 192, 192});
            else geom(3, 0, 1.5, {96, 96, 96});
        } else {
            throw ConfigError("unknown preset '" + preset + "' for scaling");
        }
        return cfg;
    }
    if (subcommand == "decay") {
        if (preset == "euclid2") {
            geom(2, 0, 64.0, {64, 256});
            cfg.set("data", "strip_dir", "1,0");
        } else if (preset == "euclid3") {
            geom(3, 0, 64.0, {64, 256, 256});
            cfg.set("data", "strip_dir", "1,0,0");
        } else {
            throw ConfigError("preset '" + preset + "' is not available for decay (use euclid2|euclid3)");
        }
        return cfg;
    }
    if (subcommand == "mixed") {
        if (preset == "euclid2") {
            geom(2, 0, 8.0, {128, 1024});
            cfg.set("data", "strip_dir", "1,0");
        } else {
            throw ConfigError("preset '" + preset + "' is not available for mixed (use euclid2)");
        }
        return cfg;
    }
    throw ConfigError("subcommand '" + subcommand + "' does not take a preset");
}

int run(const RunOptions& options) {
    try {
        Config cfg = preset_config(options.subcommand, options.preset, options.full_resolution);
        if (!options.config_path.empty()) cfg.merge(Config::parse_file(options.config_path));
        if (options.has_seed) {
            cfg.set_u64("data", "seed", options.seed);
            cfg.set_u64("measure", "seed", options.seed);
        }
        std::string outdir = options.out_dir;
        if (outdir.empty()) outdir = cfg.get_string("output", "out_dir", "out");
        cfg.set("output", "out_dir", outdir);
        std::filesystem::create_directories(outdir);

        const auto start = std::chrono::steady_clock::now();
        DriverResult res;
        if (options.subcommand == "scaling") res = drive_scaling(cfg, outdir, options.preset);
        else if (options.subcommand == "decay") res = drive_decay(cfg, outdir, options.preset);
        else if (options.subcommand == "mixed") res = drive_mixed(cfg, outdir, options.preset);
        else if (options.subcommand == "measure") res = drive_measure(cfg, outdir, options.preset);
        else if (options.subcommand == "weyl") res = drive_weyl(cfg, outdir, options.preset);
        else if (options.subcommand == "counterexample")
            res = drive_counterexample(cfg, outdir, options.preset);
        else if (options.subcommand == "selftest") res = drive_selftest(cfg, outdir, options.preset);
        else throw ConfigError("unknown subcommand '" + options.subcommand + "'");
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        // manifest: [run] metadata plus the fully resolved config snapshot
        Config manifest = cfg;
        manifest.set("run", "subcommand", options.subcommand);
        manifest.set("run", "version", kVersion);
        manifest.set("run", "duration_seconds", format_double(seconds));
        std::string joined;
        for (std::size_t i = 0; i < res.outputs.size(); ++i)
            joined += (i ? ";" : "") + res.outputs[i];
        manifest.set("run", "outputs", joined);
        std::ofstream(outdir + "/manifest.ini", std::ios::binary) << manifest.serialize();
        std::ofstream(outdir + "/summary.txt", std::ios::binary) << res.summary;

        std::cout << res.summary;
        std::cout << (res.status == 0 ? "OK" : "ACCEPTANCE FAILURE") << " (" << format_fixed(seconds, 2)
                  << " s), results in " << outdir << "\n";
        return res.status;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace waveshell
