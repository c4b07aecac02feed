// Acceptance suite: one numbered criterion per invocation (no argument runs
// all seven). Prints one PASS/FAIL line per criterion plus the measured
// quantities, and exits nonzero when any requested criterion fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "waveshell/datagen.hpp"
#include "waveshell/errors.hpp"
#include "waveshell/experiments.hpp"
#include "waveshell/measure.hpp"
#include "waveshell/norms.hpp"
#include "waveshell/rng.hpp"
#include "waveshell/run.hpp"
#include "waveshell/spectral.hpp"
#include "waveshell/weyl.hpp"

using namespace waveshell;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

ExperimentConfig scaling_config(int m, int n, double period, std::vector<int> grid,
                                std::vector<double> freqs) {
    ExperimentConfig ec;
    ec.geom.euclid_dims = m;
    ec.geom.torus_dims = n;
    ec.geom.euclid_period = period;
    ec.geom.grid_sizes = std::move(grid);
    ec.recipe.kind = DataRecipe::Kind::ShellRandom;
    ec.recipe.shell.half_width = 1.0;
    ec.recipe.distribution = Distribution::UnitModulusRandomPhase;
    ec.p = 4.0;
    ec.time = TimeGrid{0.0, 1.0, 64};
    ec.frequencies = std::move(freqs);
    ec.trials = 5;
    ec.statistic = Statistic::Max;
    ec.base_seed = 20240601ULL;
    return ec;
}

std::optional<double> fitted_alpha(const ExperimentConfig& ec, std::string& note) {
    try {
        const auto samples = scaling_experiment(ec);
        std::vector<std::pair<double, double>> pts;
        for (const auto& s : samples) pts.emplace_back(s.frequency, s.ratio_max);
        return fit_loglog(pts).slope;
    } catch (const EmptyShell& e) {
        note = e.what();
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------

void criterion1() {
    // Section-9 reproduction at the stated reduced grids, N in {4,8,16,32},
    // 5 trials of unit-modulus data, n_t = 64 on [0,1].
    std::string note;

    const auto r2t = scaling_config(2, 1, 2.0, {128, 128, 16}, {4, 8, 16, 32});
    const auto a_r2t = fitted_alpha(r2t, note);
    report(1, "R^2 x T fitted |alpha| <= 0.10",
           a_r2t && std::abs(*a_r2t) <= 0.10,
           a_r2t ? "alpha=" + fmt(*a_r2t) : note);

    const auto rt2 = scaling_config(1, 2, 2.0, {128, 32, 32}, {4, 8, 16, 32});
    const auto a_rt2 = fitted_alpha(rt2, note);
    report(1, "R x T^2 fitted alpha in [0.08, 0.30]",
           a_rt2 && *a_rt2 >= 0.08 && *a_rt2 <= 0.30,
           a_rt2 ? "alpha=" + fmt(*a_rt2) : note);

    const auto t3 = scaling_config(0, 3, 1.0, {32, 32, 32}, {4, 8, 16, 32});
    std::string t3_note;
    auto a_t3 = fitted_alpha(t3, t3_note);
    if (!a_t3) {
        // the 32^3 lattice caps |k| below 28, so N=32 has no shell; report
        // the stated-config failure and fit the frequencies that do exist
        std::string unused;
        auto partial = scaling_config(0, 3, 1.0, {32, 32, 32}, {4, 8, 16});
        a_t3 = fitted_alpha(partial, unused);
        t3_note += " | fit over N={4,8,16}: alpha=" + (a_t3 ? fmt(*a_t3) : "n/a");
        report(1, "T^3 fitted alpha in [0.18, 0.45] at stated N list", false, t3_note);
    } else {
        report(1, "T^3 fitted alpha in [0.18, 0.45]", *a_t3 >= 0.18 && *a_t3 <= 0.45,
               "alpha=" + fmt(*a_t3));
    }

    const bool ordering = a_t3 && a_rt2 && a_r2t && *a_t3 > *a_rt2 && *a_rt2 > *a_r2t;
    report(1, "ordering alpha(T^3) > alpha(R x T^2) > alpha(R^2 x T)", ordering,
           "alphas=" + std::string(a_t3 ? fmt(*a_t3) : "n/a") + "," +
               (a_rt2 ? fmt(*a_rt2) : "n/a") + "," + (a_r2t ? fmt(*a_r2t) : "n/a"));
}

void criterion2() {
    std::string note;
    const auto e2 = scaling_config(2, 0, 4.0, {256, 256}, {4, 8, 16, 32});
    const auto a2 = fitted_alpha(e2, note);
    report(2, "R^2 shell estimate |alpha| <= 0.10", a2 && std::abs(*a2) <= 0.10,
           a2 ? "alpha=" + fmt(*a2) : note);

    const auto e3 = scaling_config(3, 0, 1.5, {96, 96, 96}, {4, 8, 16, 32});
    const auto a3 = fitted_alpha(e3, note);
    report(2, "R^3 shell estimate |alpha| <= 0.10", a3 && std::abs(*a3) <= 0.10,
           a3 ? "alpha=" + fmt(*a3) : note);
}

void criterion3() {
    const auto series = nested_moment_series({8, 16, 32, 64, 128}, 6.0, 2);
    bool nondecreasing = true;
    for (std::size_t i = 1; i < series.normalized.size(); ++i)
        if (series.normalized[i] < series.normalized[i - 1]) nondecreasing = false;
    report(3, "normalized nested moment nondecreasing over K", nondecreasing,
           "first=" + fmt(series.normalized.front()) + " last=" + fmt(series.normalized.back()));

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(series.cutoffs.size());
    for (std::size_t i = 0; i < series.cutoffs.size(); ++i) {
        const double x = std::log(static_cast<double>(series.cutoffs[i]));
        const double y = series.normalized[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < series.cutoffs.size(); ++i) {
        const double x = std::log(static_cast<double>(series.cutoffs[i]));
        const double y = series.normalized[i];
        ss_res += (y - intercept - slope * x) * (y - intercept - slope * x);
        ss_tot += (y - sy / n) * (y - sy / n);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    report(3, "linear fit against log K has R^2 >= 0.9", r2 >= 0.9,
           "R2=" + fmt(r2) + " slope=" + fmt(slope));

    double worst = 0.0;
    for (int K = 1; K <= 64; ++K) {
        const double want = 2.0 * K * K - K;
        worst = std::max(worst, std::abs(quartic_moment_plain(K) - want) / want);
    }
    report(3, "quartic calibration 2K^2 - K to 1e-8 for K <= 64", worst <= 1e-8,
           "worst rel err=" + std::to_string(worst));
}

void criterion4() {
    const std::array<double, 3> c_stars{8.0, 16.0, 32.0};
    const std::array<double, 3> t_list{10.0, 100.0, 1000.0};
    const double cell = 1.0 / 256.0;  // keeps a few cells across the T=1000 band
    const std::size_t mc_samples = 200000;
    const std::uint64_t seed = 20240601ULL;

    int instances = 0;
    double worst_ratio = 0.0, worst_drift = 1.0;
    for (double c_star : c_stars) {
        CounterRng rng(derive_stream(seed, 0x6d656173757265ULL, static_cast<std::uint64_t>(c_star)));
        for (int inst = 0; inst < 7; ++inst) {
            // draw (a, b) from V subset R^2 x Z: integer third coordinate
            // (|a-b| < 1 forces both onto the same lattice plane)
            std::array<double, 3> a{}, b{};
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
                if (rb >= c_star - 1.0 && rb <= c_star + 1.0) break;
            }
            ++instances;
            double base_tsum = -1.0;
            for (double T : t_list) {
                const QuadricShellSet set{a, b, c_star, T};
                const double ssum = slice_sum(set, cell);
                const double ssup = slice_sup(set, cell);
                const auto vol = mc_volume(set, default_region(set), mc_samples,
                                           derive_stream(seed, static_cast<std::uint64_t>(instances),
                                                         static_cast<std::uint64_t>(T)));
                const double denom = vol.value + ssup;
                const double ratio = denom > 0.0 ? ssum / denom : (ssum > 0.0 ? 1e18 : 0.0);
                worst_ratio = std::max(worst_ratio, ratio);
                const double tsum = T * ssum;
                if (T == t_list.front()) {
                    base_tsum = tsum;
                } else if (base_tsum > 0.0) {
                    const double rel = tsum / base_tsum;
                    worst_drift = std::max(worst_drift, std::max(rel, rel > 0.0 ? 1.0 / rel : 1e18));
                } else if (tsum > 0.0) {
                    worst_drift = 1e18;
                }
            }
        }
    }
    report(4, "slice-bound ratio <= 10 over 21 randomized instances x T in {10,100,1000}",
           worst_ratio <= 10.0, "worst=" + fmt(worst_ratio));
    report(4, "T * slice_sum within factor 3 of its T=10 value", worst_drift <= 3.0,
           "worst drift=" + fmt(worst_drift));

    // unit-ball Monte Carlo calibration across 100 seeds
    SamplingRegion cube;
    cube.kind = SamplingRegion::Kind::Cube;
    cube.half_side = 1.0;
    const double truth = 4.0 * M_PI / 3.0;
    int good = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto est = mc_volume(
            [](const std::array<double, 3>& p) {
                return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= 1.0;
            },
            cube, 100000, s);
        if (std::abs(est.value - truth) <= 3.0 * est.std_error) ++good;
    }
    report(4, "unit-ball calibration within 3 sigma in >= 99/100 seeds", good >= 99,
           std::to_string(good) + "/100");
}

void criterion5() {
    const std::vector<double> times{1.0, 2.0, 4.0, 8.0};
    try {
        const GeometrySpec g2{2, 0, 64.0, {64, 256}};
        const StripSpec s2{{1.0, 0.0}, 0.1, {}};
        const auto r2 = decay_experiment(g2, s2, 0.5, times);
        report(5, "d=2 decay slope within -0.5 +- 0.15",
               std::abs(r2.slope + 0.5) <= 0.15, "slope=" + fmt(r2.slope));
    } catch (const WrapAround& e) {
        report(5, "d=2 decay slope within -0.5 +- 0.15", false, e.what());
    }
    try {
        const GeometrySpec g3{3, 0, 64.0, {64, 256, 256}};
        const StripSpec s3{{1.0, 0.0, 0.0}, 0.1, {}};
        const auto r3 = decay_experiment(g3, s3, 0.5, times);
        report(5, "d=3 decay slope within -1.0 +- 0.2",
               std::abs(r3.slope + 1.0) <= 0.2, "slope=" + fmt(r3.slope));
    } catch (const WrapAround& e) {
        report(5, "d=3 decay slope within -1.0 +- 0.2", false, e.what());
    }
}

void criterion6() {
    ExperimentConfig ec;
    ec.geom = GeometrySpec{2, 0, 8.0, {128, 1024}};
    ec.recipe.kind = DataRecipe::Kind::StripRandom;
    ec.recipe.strip.direction = {1.0, 0.0};
    ec.recipe.strip.half_width = 1.0;
    ec.recipe.envelope_sigma = 0.5;
    ec.recipe.distribution = Distribution::UnitModulusRandomPhase;
    ec.q = 8.0;
    ec.r = 4.0;
    ec.time = TimeGrid{0.0, 1.0, 64};
    ec.frequencies = {4.0, 8.0, 16.0, 32.0};
    ec.base_seed = 20240601ULL;
    const auto rows = mixed_norm_experiment(ec);
    double lo = rows.front().second, hi = rows.front().second;
    for (const auto& [N, ratio] : rows) {
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    report(6, "strip mixed-norm (q,r)=(8,4): max/min ratio <= 1.5 over N", hi / lo <= 1.5,
           "max/min=" + fmt(hi / lo));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion7() {
    const GeometrySpec g{1, 1, 8.0, {32, 8}};
    SpectralField f = zero_field(g);
    CounterRng rng(2024);
    for (auto& c : f.coef) c = rng.next_complex_gaussian();

    const double n0 = l2_norm(f);
    bool ok = std::abs(l2_norm(propagate(f, 1.7)) - n0) <= 1e-10 * n0;
    report(7, "propagator unitarity within 1e-10", ok, "");

    const auto ab = propagate(propagate(f, 0.6), 0.9);
    const auto once = propagate(f, 1.5);
    double err = 0.0;
    for (std::size_t i = 0; i < f.coef.size(); ++i) err += std::norm(ab.coef[i] - once.coef[i]);
    report(7, "group law within 1e-10", std::sqrt(err) <= 1e-10 * n0, "");

    const auto round = to_spectral(to_physical(f));
    err = 0.0;
    for (std::size_t i = 0; i < f.coef.size(); ++i) err += std::norm(round.coef[i] - f.coef[i]);
    report(7, "transform roundtrip within 1e-12", std::sqrt(err) <= 1e-12 * n0, "");

    const double phys = lp_space_norm(to_physical(f), 2.0);
    report(7, "Plancherel consistency within 1e-10", std::abs(phys - n0) <= 1e-10 * n0, "");

    std::vector<std::pair<double, double>> pts;
    for (double N : {2.0, 4.0, 8.0, 16.0}) pts.emplace_back(N, 0.7 * std::pow(N, 1.25));
    const auto fit = fit_loglog(pts);
    report(7, "log-log fit exact on synthetic power laws to 1e-12",
           std::abs(fit.slope - 1.25) < 1e-12 && std::abs(fit.r_squared - 1.0) < 1e-12, "");

    // bitwise reproducibility: re-running from the manifest regenerates the CSV
    namespace fs = std::filesystem;
    const std::string dir_a = "acceptance_rerun_a", dir_b = "acceptance_rerun_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    const std::string cfg_path = "acceptance_rerun.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "[geometry]\nm = 0\nn = 3\nperiod = 1\ngrid = 16,16,16\n"
            << "[experiment]\nN_list = 2,4\ntrials = 2\n[time]\nnt = 8\n";
    }
    RunOptions first;
    first.subcommand = "scaling";
    first.config_path = cfg_path;
    first.out_dir = dir_a;
    const int status_a = waveshell::run(first);
    RunOptions second;
    second.subcommand = "scaling";
    second.config_path = dir_a + "/manifest.ini";
    second.out_dir = dir_b;
    const int status_b = waveshell::run(second);
    const std::string csv_a = slurp(dir_a + "/scaling.csv");
    const std::string csv_b = slurp(dir_b + "/scaling.csv");
    report(7, "runs reproduce bitwise from manifests",
           status_a == 0 && status_b == 0 && !csv_a.empty() && csv_a == csv_b,
           "bytes=" + std::to_string(csv_a.size()));
}

}  // namespace

int main(int argc, char** argv) {
    const int which = argc > 1 ? std::atoi(argv[1]) : 0;
    if (which == 0 || which == 1) criterion1();
    if (which == 0 || which == 2) criterion2();
    if (which == 0 || which == 3) criterion3();
    if (which == 0 || which == 4) criterion4();
    if (which == 0 || which == 5) criterion5();
    if (which == 0 || which == 6) criterion6();
    if (which == 0 || which == 7) criterion7();
    if (failures) std::printf("%d criterion check(s) failed\n", failures);
    return failures ? 1 : 0;
}
