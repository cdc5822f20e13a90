#include "mcf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mcf::metrics {

namespace {

constexpr int kWindowSize = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01; // (K1 * L)^2 with L = 1
constexpr double kC2 = 0.03 * 0.03;

void check_dims(const AlphaMap& a, const AlphaMap& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("alpha maps have different dimensions");
    }
}

std::vector<double> clamped(const AlphaMap& m) {
    std::vector<double> out(m.values().size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(m.values()[i], 0.0, 1.0);
    return out;
}

double abs_diff_sum(const AlphaMap& a, const AlphaMap& b) {
    check_dims(a, b);
    const std::vector<double> ca = clamped(a);
    const std::vector<double> cb = clamped(b);
    double sum = 0.0;
    for (size_t i = 0; i < ca.size(); ++i) sum += std::abs(ca[i] - cb[i]);
    return sum;
}

} // namespace

double mad(const AlphaMap& a, const AlphaMap& b) {
    return abs_diff_sum(a, b) / a.pixel_count();
}

double sad(const AlphaMap& a, const AlphaMap& b) { return mad(a, b); }

double sad_unnormalized(const AlphaMap& a, const AlphaMap& b) { return abs_diff_sum(a, b); }

double ssim(const AlphaMap& a, const AlphaMap& b) {
    check_dims(a, b);
    const int w = a.width();
    const int h = a.height();
    if (w < kWindowSize || h < kWindowSize) {
        throw std::invalid_argument("image smaller than the 11x11 structural window");
    }
    const std::vector<double> ca = clamped(a);
    const std::vector<double> cb = clamped(b);

    double window[kWindowSize][kWindowSize];
    double wsum = 0.0;
    for (int dy = 0; dy < kWindowSize; ++dy) {
        for (int dx = 0; dx < kWindowSize; ++dx) {
            const double ry = dy - (kWindowSize - 1) / 2;
            const double rx = dx - (kWindowSize - 1) / 2;
            window[dy][dx] = std::exp(-0.5 * (rx * rx + ry * ry) / (kWindowSigma * kWindowSigma));
            wsum += window[dy][dx];
        }
    }
    for (auto& row : window) {
        for (double& v : row) v /= wsum;
    }

    double total = 0.0;
    int positions = 0;
    for (int y = 0; y + kWindowSize <= h; ++y) {
        for (int x = 0; x + kWindowSize <= w; ++x) {
            double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
            for (int dy = 0; dy < kWindowSize; ++dy) {
                const size_t row = static_cast<size_t>((y + dy) * w + x);
                for (int dx = 0; dx < kWindowSize; ++dx) {
                    const double wt = window[dy][dx];
                    const double va = ca[row + static_cast<size_t>(dx)];
                    const double vb = cb[row + static_cast<size_t>(dx)];
                    mu_a += wt * va;
                    mu_b += wt * vb;
                    aa += wt * va * va;
                    bb += wt * vb * vb;
                    ab += wt * va * vb;
                }
            }
            const double var_a = aa - mu_a * mu_a;
            const double var_b = bb - mu_b * mu_b;
            const double cov = ab - mu_a * mu_b;
            total += ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
                     ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
            ++positions;
        }
    }
    return total / positions;
}

MatteMetrics compare(const AlphaMap& a, const AlphaMap& b) {
    MatteMetrics m;
    m.ssim = ssim(a, b);
    m.mad = mad(a, b);
    m.sad = sad(a, b);
    return m;
}

} // namespace mcf::metrics
