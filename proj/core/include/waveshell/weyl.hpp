#pragma once

#include <complex>
#include <vector>

namespace waveshell {

/// Moments of the quadratic exponential sum over a list of cutoffs K.
struct MomentSeries {
    std::vector<int> cutoffs;         ///< K values, strictly increasing
    std::vector<double> moments;      ///< nested moment at each K
    std::vector<double> normalized;   ///< moment / K^{d+1}
};

/// sum_{k=1}^{K} e^{2 pi i (y k + t k^2)} by direct summation.
std::complex<double> weyl_sum(int K, double y, double t);

/// Fourth moment over the unit torus in y and the unit period in t, by exact
/// trigonometric quadrature (y grid >= 4K+1, t grid >= 4K^2+1). Equals the
/// number of quadruples k1+k2=k3+k4, k1^2+k2^2=k3^2+k4^2 in [1,K]^4, i.e.
/// 2K^2 - K.
double quartic_moment_plain(int K);

/// Nested moment int_0^1 ( int_T |W_K(y,t)|^p dy )^{d-1} dt by tensor
/// midpoint quadrature. Requires p = 2(d+1)/(d-1), n_y >= ceil(p) K + 1 and
/// n_t >= ceil(p) K^2 + 1 (QuadratureUnderResolved otherwise). Those floors
/// make the rule exact for d in {2, 3}.
double nested_moment(int K, double p, int d, int n_y, int n_t);

/// Bandwidth-safe quadrature floors for nested_moment.
int nested_moment_min_ny(int K, double p);
int nested_moment_min_nt(int K, double p);

/// Parameters of the Euclidean-factor quadrature.
struct EuclidQuadrature {
    double s_max = 2000.0;  ///< s domain is [-s_max, s_max]; tail negligible for s_max >= 400
    int n_s = 80000;
    int n_eta = 512;
};

/// int_R | int_{-1/100}^{1/100} e^{2 pi i (s eta + t eta^2)} d eta |^p ds,
/// truncated to |s| <= s_max, both integrals by midpoint quadrature.
double euclid_factor(double p, double t, const EuclidQuadrature& quad = {});

/// Direct sweep of normalized nested moments over a K list.
MomentSeries nested_moment_series(const std::vector<int>& cutoffs, double p, int d);

}  // namespace waveshell
