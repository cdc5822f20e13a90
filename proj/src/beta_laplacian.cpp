#include "mcf/beta_laplacian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcf::laplacian {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(3.0 * sigma + 0.5);
    std::vector<double> k(static_cast<size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int t = -radius; t <= radius; ++t) {
        const double v = std::exp(-0.5 * t * t / (sigma * sigma));
        k[static_cast<size_t>(t + radius)] = v;
        sum += v;
    }
    for (double& v : k) v /= sum;
    return k;
}

int reflect(int p, int n) {
    while (p < 0 || p >= n) {
        if (p < 0) p = -p - 1;
        if (p >= n) p = 2 * n - 1 - p;
    }
    return p;
}

void blur_plane(std::vector<double>& plane, int width, int height,
                const std::vector<double>& kernel) {
    const int radius = static_cast<int>(kernel.size() / 2);
    std::vector<double> tmp(plane.size());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) {
                acc += kernel[static_cast<size_t>(t + radius)] *
                       plane[static_cast<size_t>(y * width + reflect(x + t, width))];
            }
            tmp[static_cast<size_t>(y * width + x)] = acc;
        }
    }
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) {
                acc += kernel[static_cast<size_t>(t + radius)] *
                       tmp[static_cast<size_t>(reflect(y + t, height) * width + x)];
            }
            plane[static_cast<size_t>(y * width + x)] = acc;
        }
    }
}

void smooth_moment_field(MomentField& field, double sigma) {
    const std::vector<double> kernel = gaussian_kernel(sigma);
    if (kernel.size() == 1) return;
    const size_t n = field.m.size();
    std::vector<double> plane(n);
    for (int r = 0; r < 4; ++r) {
        for (int c = r; c < 4; ++c) {
            for (size_t i = 0; i < n; ++i) plane[i] = field.m[i](r, c);
            blur_plane(plane, field.width, field.height, kernel);
            for (size_t i = 0; i < n; ++i) {
                field.m[i](r, c) = plane[i];
                field.m[i](c, r) = plane[i];
            }
        }
    }
}

} // namespace

SpatialPrior SpatialPrior::none() { return {SpatialPriorKind::None, 0.0, 0.0}; }

SpatialPrior SpatialPrior::isotropic(double eps_s) {
    if (eps_s < 0.0) throw std::invalid_argument("eps_s must be nonnegative");
    return {SpatialPriorKind::Isotropic, eps_s, 0.0};
}

SpatialPrior SpatialPrior::smoothed_moments(double sigma_s, double eps_s) {
    if (sigma_s <= 0.0) throw std::invalid_argument("sigma_s must be positive");
    if (eps_s < 0.0) throw std::invalid_argument("eps_s must be nonnegative");
    return {SpatialPriorKind::SmoothedMoments, eps_s, sigma_s};
}

MomentField moments(const Image& image, const SpatialPrior& prior) {
    image.validate();
    MomentField field;
    field.width = image.width();
    field.height = image.height();
    field.m.resize(static_cast<size_t>(image.pixel_count()));
    for (int i = 0; i < image.pixel_count(); ++i) {
        const Eigen::Vector4d x = lift(image, i).vec();
        field.m[static_cast<size_t>(i)].noalias() = x * x.transpose();
    }
    if (prior.kind == SpatialPriorKind::SmoothedMoments) {
        smooth_moment_field(field, prior.sigma_s);
    }
    if (prior.kind != SpatialPriorKind::None && prior.eps_s > 0.0) {
        const Eigen::Matrix4d inflation = prior.eps_s * Eigen::Matrix4d::Identity();
        for (auto& m : field.m) m += inflation;
    }
    return field;
}

sparse::BlockSparseMatrix assemble_five_point(const MomentField& moments) {
    const int w = moments.width;
    const int h = moments.height;
    if (w < 2 && h < 2) {
        throw std::invalid_argument("five-point assembly needs at least one neighbour pair");
    }
    sparse::BlockSparseMatrix::Builder builder(w * h);
    std::vector<Eigen::Matrix4d> diag(static_cast<size_t>(w * h), Eigen::Matrix4d::Zero());
    auto couple = [&](int i, int k) {
        const Eigen::Matrix4d off = -0.5 * (moments[i] + moments[k]);
        builder.add_coupling(i, k, off);
        diag[static_cast<size_t>(i)] -= off;
        diag[static_cast<size_t>(k)] -= off;
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int i = y * w + x;
            if (x + 1 < w) couple(i, i + 1);
            if (y + 1 < h) couple(i, i + w);
        }
    }
    for (int i = 0; i < w * h; ++i) builder.add(i, i, diag[static_cast<size_t>(i)]);
    return std::move(builder).compile();
}

sparse::BlockSparseMatrix assemble_general(const MomentField& moments, int radius) {
    if (radius < 1) throw std::invalid_argument("window radius must be at least 1");
    const int w = moments.width;
    const int h = moments.height;
    if (w < 2 * radius + 1 || h < 2 * radius + 1) {
        throw std::invalid_argument("image too small for a " +
                                    std::to_string(2 * radius + 1) + "x" +
                                    std::to_string(2 * radius + 1) + " window");
    }
    sparse::BlockSparseMatrix::Builder builder(w * h);
    std::vector<Eigen::Matrix4d> diag(static_cast<size_t>(w * h), Eigen::Matrix4d::Zero());
    std::vector<int> members;
    members.reserve(static_cast<size_t>((2 * radius + 1) * (2 * radius + 1)));
    for (int yc = 0; yc < h; ++yc) {
        for (int xc = 0; xc < w; ++xc) {
            members.clear();
            for (int y = std::max(0, yc - radius); y <= std::min(h - 1, yc + radius); ++y) {
                for (int x = std::max(0, xc - radius); x <= std::min(w - 1, xc + radius); ++x) {
                    members.push_back(y * w + x);
                }
            }
            const int j = yc * w + xc;
            const Eigen::Matrix4d off = -(1.0 / static_cast<double>(members.size())) * moments[j];
            for (size_t a = 0; a < members.size(); ++a) {
                for (size_t b = a + 1; b < members.size(); ++b) {
                    builder.add(members[a], members[b], off);
                    builder.add(members[b], members[a], off);
                    diag[static_cast<size_t>(members[a])] -= off;
                    diag[static_cast<size_t>(members[b])] -= off;
                }
            }
        }
    }
    for (int i = 0; i < w * h; ++i) builder.add(i, i, diag[static_cast<size_t>(i)]);
    return std::move(builder).compile();
}

} // namespace mcf::laplacian
