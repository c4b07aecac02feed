#include <doctest.h>

#include <cmath>
#include <set>

#include "waveshell/datagen.hpp"
#include "waveshell/errors.hpp"
#include "waveshell/norms.hpp"

using namespace waveshell;

TEST_CASE("random shell data") {
    const GeometrySpec g{0, 3, 1.0, {16, 16, 16}};
    const ShellSpec shell{1.0, 1.0, {}};

    SUBCASE("unit-modulus draws exactly on the 33-point shell") {
        const auto f = random_shell_data(g, shell, Distribution::UnitModulusRandomPhase, 42);
        std::size_t nonzero = 0;
        for (const auto& c : f.coef) {
            if (c == std::complex<double>(0.0, 0.0)) continue;
            ++nonzero;
            CHECK(std::abs(std::abs(c) - 1.0) < 1e-15);
        }
        CHECK(nonzero == 33);
    }
    SUBCASE("support is exactly the shell index set") {
        const auto f = random_shell_data(g, shell, Distribution::ComplexGaussian, 1);
        const auto idx = shell_indices(build_lattice(g), shell);
        const std::set<std::size_t> on(idx.begin(), idx.end());
        for (std::size_t i = 0; i < f.coef.size(); ++i) {
            if (on.count(i))
                CHECK(f.coef[i] != std::complex<double>(0.0, 0.0));
            else
                CHECK(f.coef[i] == std::complex<double>(0.0, 0.0));
        }
    }
    SUBCASE("same seed reproduces bitwise, different seeds differ") {
        const auto a = random_shell_data(g, shell, Distribution::UnitModulusRandomPhase, 9);
        const auto b = random_shell_data(g, shell, Distribution::UnitModulusRandomPhase, 9);
        const auto c = random_shell_data(g, shell, Distribution::UnitModulusRandomPhase, 10);
        CHECK(a.coef == b.coef);
        CHECK(a.coef != c.coef);
    }
    SUBCASE("empty shell reports the spec") {
        CHECK_THROWS_WITH_AS(
            random_shell_data(g, {1e6, 1.0, {}}, Distribution::UnitModulusRandomPhase, 0),
            doctest::Contains("empty shell c_*=1e+06"), EmptyShell);
    }
    SUBCASE("gaussian second moment is normalized") {
        // ~1700 draws per seed over several seeds: mean |c|^2 within 5% of 1
        const GeometrySpec big{0, 3, 1.0, {32, 32, 32}};
        double sum = 0.0;
        std::size_t count = 0;
        for (std::uint64_t seed = 0; seed < 7; ++seed) {
            const auto f = random_shell_data(big, {8.0, 1.0, {}}, Distribution::ComplexGaussian, seed);
            for (const auto& c : f.coef) {
                if (c == std::complex<double>(0.0, 0.0)) continue;
                sum += std::norm(c);
                ++count;
            }
        }
        CHECK(count > 10000);
        CHECK(std::abs(sum / count - 1.0) < 0.05);
    }
}

TEST_CASE("random strip data") {
    const GeometrySpec g{1, 1, 8.0, {32, 8}};

    SUBCASE("narrow strip keeps only the v2 = 0 plane") {
        const StripSpec s{{0.0, 1.0}, 0.4, {}};
        const auto f = random_strip_data(g, s, Distribution::UnitModulusRandomPhase, 3);
        const auto lat = build_lattice(g);
        for (std::size_t i = 0; i < f.coef.size(); ++i)
            if (f.coef[i] != std::complex<double>(0.0, 0.0)) CHECK(lat.frequency(i)[1] == 0.0);
    }
    SUBCASE("sigma = inf leaves draws undamped") {
        const StripSpec s{{1.0, 0.0}, 0.5, {}};
        const auto f = random_strip_data(g, s, Distribution::UnitModulusRandomPhase, 3);
        for (const auto& c : f.coef)
            if (c != std::complex<double>(0.0, 0.0)) CHECK(std::abs(std::abs(c) - 1.0) < 1e-15);
    }
    SUBCASE("finite sigma damps by the Gaussian of the full offset distance") {
        const StripSpec s{{1.0, 0.0}, 0.5, {}};
        const double sigma = 0.7;
        const auto f = random_strip_data(g, s, Distribution::UnitModulusRandomPhase, 3, sigma);
        const auto lat = build_lattice(g);
        for (std::size_t i = 0; i < f.coef.size(); ++i) {
            if (f.coef[i] == std::complex<double>(0.0, 0.0)) continue;
            const auto v = lat.frequency(i);
            const double want = std::exp(-(v[0] * v[0] + v[1] * v[1]) / (2 * sigma * sigma));
            CHECK(std::abs(f.coef[i]) == doctest::Approx(want).epsilon(1e-12));
        }
    }
    SUBCASE("seed reproducibility") {
        const StripSpec s{{1.0, 0.0}, 0.5, {}};
        CHECK(random_strip_data(g, s, Distribution::ComplexGaussian, 8, 1.0).coef ==
              random_strip_data(g, s, Distribution::ComplexGaussian, 8, 1.0).coef);
    }
    SUBCASE("empty strip throws") {
        const StripSpec s{{1.0, 0.0}, 0.01, {5.5, 0.0}};  // between lattice columns, off-lattice
        CHECK_THROWS_AS(random_strip_data({1, 1, 2.0, {4, 4}}, s,
                                          Distribution::UnitModulusRandomPhase, 0),
                        EmptyStrip);
    }
}

TEST_CASE("gaussian strip packet is coherent") {
    const GeometrySpec g{2, 0, 16.0, {32, 64}};
    const StripSpec s{{1.0, 0.0}, 0.2, {}};
    const auto f = gaussian_strip_packet(g, s, 0.5);
    for (const auto& c : f.coef) {
        CHECK(c.imag() == 0.0);
        CHECK(c.real() >= 0.0);
    }
    CHECK(l2_norm(f) > 0.0);
}

TEST_CASE("counterexample data") {
    // d=2: one Euclidean direction at P=512, one torus direction
    const GeometrySpec g{1, 1, 512.0, {16384, 8}};

    SUBCASE("torus box side follows the floor rule") {
        CHECK(counterexample_box_side(4.0, 2) == 1);  // floor(sqrt(2)) = 1
        CHECK(counterexample_box_side(9.0, 2) == 2);
    }
    SUBCASE("indicator values and the floor-rule box") {
        const auto f = counterexample_data(g, 8.0, 9.0, 2);
        const auto lat = build_lattice(g);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < f.coef.size(); ++i) {
            const auto& c = f.coef[i];
            CHECK((c == std::complex<double>(0.0, 0.0) || c == std::complex<double>(1.0, 0.0)));
            if (c == std::complex<double>(1.0, 0.0)) {
                ++nonzero;
                const auto v = lat.frequency(i);
                CHECK(v[0] > 8.0 - 0.01);
                CHECK(v[0] < 8.0 + 0.01);
                CHECK(v[1] >= 1.0);
                CHECK(v[1] <= 2.0);  // K = floor(sqrt(9/2)) = 2
            }
        }
        CHECK(nonzero > 0);
        // direct oracle: count lattice points in the open interval
        std::size_t euclid_hits = 0;
        for (double xi : lat.freqs[0])
            if (xi > 8.0 - 0.01 && xi < 8.0 + 0.01) ++euclid_hits;
        CHECK(nonzero == euclid_hits * 2);
        CHECK(euclid_hits >= 8);
    }
    SUBCASE("L2 norm matches the analytic value") {
        const auto f = counterexample_data(g, 8.0, 9.0, 2);
        std::size_t nonzero = 0;
        for (const auto& c : f.coef)
            if (c != std::complex<double>(0.0, 0.0)) ++nonzero;
        const double expected = std::sqrt(512.0 * static_cast<double>(nonzero));
        CHECK(std::abs(l2_norm(f) - expected) <= 1e-10 * expected);
    }
    SUBCASE("doubling P doubles the Euclidean count within one point") {
        const GeometrySpec g2{1, 1, 1024.0, {32768, 8}};
        const auto count = [](const GeometrySpec& gg) {
            const auto f = counterexample_data(gg, 8.0, 9.0, 2);
            std::size_t n = 0;
            for (const auto& c : f.coef)
                if (c != std::complex<double>(0.0, 0.0)) ++n;
            return n / 2;  // two torus modes per Euclidean hit
        };
        const auto c1 = count(g), c2 = count(g2);
        CHECK(std::abs(static_cast<long long>(c2) - 2LL * static_cast<long long>(c1)) <= 1);
    }
    SUBCASE("coarse resolution is rejected") {
        CHECK_THROWS_AS(counterexample_data({1, 1, 256.0, {8192, 8}}, 8.0, 9.0, 2),
                        ResolutionTooCoarse);
    }
    SUBCASE("out-of-range torus modes are rejected") {
        CHECK_THROWS_AS(counterexample_data(g, 8.0, 128.0, 2), RangeExceeded);
    }
    SUBCASE("out-of-range Euclidean frequency is rejected") {
        CHECK_THROWS_AS(counterexample_data(g, 30.0, 9.0, 2), RangeExceeded);
    }
    SUBCASE("d=3 spreads over two torus directions") {
        const GeometrySpec g3{1, 2, 512.0, {16384, 8, 8}};
        const auto f = counterexample_data(g3, 8.0, 27.0, 3);  // K = floor(3) = 3
        const auto lat = build_lattice(g3);
        for (std::size_t i = 0; i < f.coef.size(); ++i) {
            if (f.coef[i] == std::complex<double>(0.0, 0.0)) continue;
            const auto v = lat.frequency(i);
            CHECK(v[1] >= 1.0);
            CHECK(v[1] <= 3.0);
            CHECK(v[2] >= 1.0);
            CHECK(v[2] <= 3.0);
        }
    }
}
