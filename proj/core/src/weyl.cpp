#include "waveshell/weyl.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "waveshell/errors.hpp"

namespace waveshell {

std::complex<double> weyl_sum(int K, double y, double t) {
    std::complex<double> s = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double phase = 2.0 * M_PI * (y * k + t * static_cast<double>(k) * k);
        s += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return s;
}

namespace {

int next_fast_size(int n) {
    for (;; ++n) {
        int m = n;
        while (m % 2 == 0) m /= 2;
        while (m % 3 == 0) m /= 3;
        while (m % 5 == 0) m /= 5;
        if (m == 1) return n;
    }
}

// One cached backward plan per transform length.
class LinePlans {
public:
    static LinePlans& instance() {
        static LinePlans p;
        return p;
    }

    // in-place backward DFT (e^{+2 pi i jk/n}) on buf of length n
    void backward(std::vector<std::complex<double>>& buf) {
        std::lock_guard<std::mutex> lock(mutex_);
        const int n = static_cast<int>(buf.size());
        Entry& e = entry(n);
        for (int i = 0; i < n; ++i) {
            e.data[i][0] = buf[static_cast<std::size_t>(i)].real();
            e.data[i][1] = buf[static_cast<std::size_t>(i)].imag();
        }
        fftw_execute(e.plan);
        for (int i = 0; i < n; ++i)
            buf[static_cast<std::size_t>(i)] = {e.data[i][0], e.data[i][1]};
    }

private:
    struct Entry {
        fftw_complex* data = nullptr;
        fftw_plan plan = nullptr;
        ~Entry() {
            if (plan) fftw_destroy_plan(plan);
            if (data) fftw_free(data);
        }
    };

    Entry& entry(int n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return *it->second;
        auto e = std::make_unique<Entry>();
        e->data = fftw_alloc_complex(static_cast<std::size_t>(n));
        e->plan = fftw_plan_dft_1d(n, e->data, e->data, FFTW_BACKWARD, FFTW_ESTIMATE);
        auto [pos, ok] = cache_.emplace(n, std::move(e));
        (void)ok;
        return *pos->second;
    }

    std::mutex mutex_;
    std::map<int, std::unique_ptr<Entry>> cache_;
};

// (1/n_y) sum_j |W(y_j, t)|^p over the midpoint grid y_j = (j + 1/2)/n_y,
// via one length-n_y DFT: W(y_j, t) = sum_k e^{2 pi i t k^2} e^{pi i k/n_y}
// e^{2 pi i jk/n_y}.
double inner_moment(int K, double p, double t, int n_y, std::vector<std::complex<double>>& buf) {
    buf.assign(static_cast<std::size_t>(n_y), {0.0, 0.0});
    for (int k = 1; k <= K; ++k) {
        const double phase = 2.0 * M_PI * t * static_cast<double>(k) * k + M_PI * k / n_y;
        buf[static_cast<std::size_t>(k)] = {std::cos(phase), std::sin(phase)};
    }
    LinePlans::instance().backward(buf);
    double acc = 0.0;
    if (p == 4.0) {
        for (const auto& w : buf) {
            const double m2 = std::norm(w);
            acc += m2 * m2;
        }
    } else if (p == 6.0) {
        for (const auto& w : buf) {
            const double m2 = std::norm(w);
            acc += m2 * m2 * m2;
        }
    } else {
        for (const auto& w : buf) acc += std::pow(std::abs(w), p);
    }
    return acc / n_y;
}

}  // namespace

double quartic_moment_plain(int K) {
    if (K < 1) throw Error("quartic_moment_plain: K must be >= 1");
    const int n_y = next_fast_size(4 * K + 1);
    const int n_t = 4 * K * K + 1;
    std::vector<std::complex<double>> buf;
    double acc = 0.0;
    for (int i = 0; i < n_t; ++i) {
        const double t = (i + 0.5) / n_t;
        acc += inner_moment(K, 4.0, t, n_y, buf);
    }
    return acc / n_t;
}

int nested_moment_min_ny(int K, double p) { return static_cast<int>(std::ceil(p)) * K + 1; }
int nested_moment_min_nt(int K, double p) { return static_cast<int>(std::ceil(p)) * K * K + 1; }

double nested_moment(int K, double p, int d, int n_y, int n_t) {
    if (K < 1) throw Error("nested_moment: K must be >= 1");
    if (d < 2) throw Error("nested_moment: d must be >= 2");
    const double p_required = 2.0 * (d + 1) / (d - 1);
    if (std::abs(p - p_required) > 1e-12)
        throw Error("nested_moment: p must equal 2(d+1)/(d-1) = " + std::to_string(p_required) +
                    " for d = " + std::to_string(d));
    if (n_y < nested_moment_min_ny(K, p))
        throw QuadratureUnderResolved("nested_moment: n_y = " + std::to_string(n_y) +
                                      " below floor " + std::to_string(nested_moment_min_ny(K, p)));
    if (n_t < nested_moment_min_nt(K, p))
        throw QuadratureUnderResolved("nested_moment: n_t = " + std::to_string(n_t) +
                                      " below floor " + std::to_string(nested_moment_min_nt(K, p)));
    std::vector<std::complex<double>> buf;
    double acc = 0.0;
    for (int i = 0; i < n_t; ++i) {
        const double t = (i + 0.5) / n_t;
        acc += std::pow(inner_moment(K, p, t, n_y, buf), d - 1);
    }
    return acc / n_t;
}

double euclid_factor(double p, double t, const EuclidQuadrature& quad) {
    if (!(p >= 2.0)) throw Error("euclid_factor: p must be >= 2");
    if (!(quad.s_max >= 400.0)) throw Error("euclid_factor: s_max must be >= 400");
    constexpr double kHalfWidth = 0.01;  // eta interval (-1/100, 1/100)
    const double d_eta = 2.0 * kHalfWidth / quad.n_eta;
    const double ds = 2.0 * quad.s_max / quad.n_s;
    // inner(s) = sum_j chirp_j z^j with z = e^{2 pi i s d_eta}: the chirp
    // factors e^{2 pi i (t eta_j^2 + s_0-phase split)} are s-independent
    std::vector<std::complex<double>> chirp(static_cast<std::size_t>(quad.n_eta));
    for (int j = 0; j < quad.n_eta; ++j) {
        const double eta = -kHalfWidth + (j + 0.5) * d_eta;
        const double phase = 2.0 * M_PI * t * eta * eta;
        chirp[static_cast<std::size_t>(j)] = {std::cos(phase), std::sin(phase)};
    }
    const double eta0 = -kHalfWidth + 0.5 * d_eta;
    double acc = 0.0;
    for (int i = 0; i < quad.n_s; ++i) {
        const double s = -quad.s_max + (i + 0.5) * ds;
        const double zp = 2.0 * M_PI * s * d_eta;
        const std::complex<double> z(std::cos(zp), std::sin(zp));
        std::complex<double> zj(std::cos(2.0 * M_PI * s * eta0), std::sin(2.0 * M_PI * s * eta0));
        std::complex<double> inner = 0.0;
        for (int j = 0; j < quad.n_eta; ++j) {
            inner += chirp[static_cast<std::size_t>(j)] * zj;
            zj *= z;
        }
        acc += std::pow(std::abs(inner) * d_eta, p) * ds;
    }
    return acc;
}

MomentSeries nested_moment_series(const std::vector<int>& cutoffs, double p, int d) {
    MomentSeries series;
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (i > 0 && cutoffs[i] <= cutoffs[i - 1])
            throw Error("nested_moment_series: K list must be strictly increasing");
        const int K = cutoffs[i];
        const int n_y = next_fast_size(nested_moment_min_ny(K, p));
        const int n_t = nested_moment_min_nt(K, p);
        const double m = nested_moment(K, p, d, n_y, n_t);
        series.cutoffs.push_back(K);
        series.moments.push_back(m);
        series.normalized.push_back(m / std::pow(static_cast<double>(K), d + 1));
    }
    return series;
}

}  // namespace waveshell
