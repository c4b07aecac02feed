#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "waveshell/datagen.hpp"
#include "waveshell/geometry.hpp"
#include "waveshell/norms.hpp"

namespace waveshell {

enum class Statistic { Max, Mean };

/// One quantitative study: geometry, data recipe template, norm exponents,
/// time window, frequency sweep and trial bookkeeping.
struct ExperimentConfig {
    GeometrySpec geom;
    DataRecipe recipe;
    double p = 4.0;                       ///< spacetime exponent
    double q = 0.0, r = 0.0;              ///< mixed-norm exponents (0 = unused)
    TimeGrid time;
    std::vector<double> frequencies;      ///< N sweep, strictly increasing
    int trials = 5;
    Statistic statistic = Statistic::Max;
    std::uint64_t base_seed = 0;

    void validate() const;
};

struct ScalingSample {
    double frequency;   ///< N
    double ratio_max;   ///< max over trials of the Strichartz ratio
    double ratio_mean;  ///< mean over trials
    double statistic_value(Statistic s) const { return s == Statistic::Max ? ratio_max : ratio_mean; }
};

/// Shell-scaling sweep C(N). For each N, `trials` draws with seeds derived
/// from (base_seed, N, trial); deterministic given the config. Propagates
/// EmptyShell naming the offending N.
std::vector<ScalingSample> scaling_experiment(const ExperimentConfig& cfg);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    std::size_t count = 0;
};

/// Ordinary least squares on (log N, log C); exact for power laws. Constant
/// series report R^2 = 1. Throws NonpositiveSample.
ScalingFit fit_loglog(const std::vector<std::pair<double, double>>& samples);

struct DecayResult {
    std::vector<double> times;
    std::vector<double> sup_norms;
    double slope = 0.0;  ///< log-log least-squares slope
};

/// Sup-norm of the evolved coherent strip packet at each time. Throws
/// WrapAround when 2 max|xi_j| t_max exceeds P/2 in a Euclidean direction.
DecayResult decay_experiment(const GeometrySpec& geom, const StripSpec& strip, double sigma,
                             const std::vector<double>& times);

/// Strip data translated to offset N a_perp; (mixed_norm / l2_norm) per N.
/// Rejects (q, r) pairs that are not sharp (d-1)/2-admissible.
std::vector<std::pair<double, double>> mixed_norm_experiment(const ExperimentConfig& cfg);

/// Checks 1/q = sigma (1/2 - 1/r) with sigma = (d-1)/2, excluding (2, inf, 1);
/// throws AdmissibilityError listing sigma.
void check_admissible(double q, double r, int d);

}  // namespace waveshell
