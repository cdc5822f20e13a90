#include "mcf/core.hpp"

#include <cmath>
#include <stdexcept>

namespace mcf {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be at least 1x1");
    }
}

void check_plane_size(size_t got, int width, int height, const char* what) {
    if (got != static_cast<size_t>(width) * static_cast<size_t>(height)) {
        throw std::invalid_argument(std::string(what) + ": plane size does not match dimensions");
    }
}

} // namespace

Image::Image(int width, int height) : width_(width), height_(height) {
    check_dims(width, height);
    for (auto& p : planes_) p.assign(static_cast<size_t>(width) * height, 0.0);
}

Image::Image(int width, int height, std::array<std::vector<double>, 3> planes)
    : width_(width), height_(height), planes_(std::move(planes)) {
    check_dims(width, height);
    for (const auto& p : planes_) check_plane_size(p.size(), width, height, "Image");
    validate();
}

void Image::validate() const {
    for (const auto& p : planes_) {
        for (double v : p) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw std::invalid_argument("Image values must be finite and within [0,1]");
            }
        }
    }
}

AugmentedColor::AugmentedColor(const Eigen::Vector4d& x) : x_(x) {
    if (x_[3] != 1.0) {
        throw std::invalid_argument("AugmentedColor: fourth component must be exactly 1");
    }
    for (int c = 0; c < 3; ++c) {
        if (!std::isfinite(x_[c]) || x_[c] < 0.0 || x_[c] > 1.0) {
            throw std::invalid_argument("AugmentedColor: colour components must be in [0,1]");
        }
    }
}

AugmentedColor::AugmentedColor(double r, double g, double b)
    : AugmentedColor(Eigen::Vector4d(r, g, b, 1.0)) {}

Trimap::Trimap(int width, int height, std::vector<TriLabel> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
    check_dims(width, height);
    check_plane_size(labels_.size(), width, height, "Trimap");
}

Trimap Trimap::uniform(int width, int height, TriLabel label) {
    check_dims(width, height);
    return Trimap(width, height,
                  std::vector<TriLabel>(static_cast<size_t>(width) * height, label));
}

int Trimap::count(TriLabel label) const {
    int n = 0;
    for (TriLabel l : labels_) n += (l == label) ? 1 : 0;
    return n;
}

AlphaMap::AlphaMap(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height);
    check_plane_size(values_.size(), width, height, "AlphaMap");
    validate();
}

AlphaMap::AlphaMap(int width, int height, double fill)
    : width_(width), height_(height),
      values_(static_cast<size_t>(width) * height, fill) {
    check_dims(width, height);
}

void AlphaMap::validate() const {
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("AlphaMap values must be finite");
    }
}

ConfidenceMap::ConfidenceMap(int width, int height, std::vector<double> lambdas)
    : width_(width), height_(height), lambdas_(std::move(lambdas)) {
    check_dims(width, height);
    check_plane_size(lambdas_.size(), width, height, "ConfidenceMap");
    validate();
}

ConfidenceMap::ConfidenceMap(int width, int height, double fill)
    : width_(width), height_(height),
      lambdas_(static_cast<size_t>(width) * height, fill) {
    check_dims(width, height);
    if (!(fill >= 0.0) || !std::isfinite(fill)) {
        throw std::invalid_argument("ConfidenceMap values must be nonnegative and finite");
    }
}

void ConfidenceMap::validate() const {
    for (double v : lambdas_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("ConfidenceMap values must be nonnegative and finite");
        }
    }
}

BetaField::BetaField(int width, int height)
    : width_(width), height_(height),
      beta_(static_cast<size_t>(width) * height, Eigen::Vector4d::Zero()) {
    check_dims(width, height);
}

BetaField::BetaField(int width, int height, std::vector<Eigen::Vector4d> beta)
    : width_(width), height_(height), beta_(std::move(beta)) {
    check_dims(width, height);
    check_plane_size(beta_.size(), width, height, "BetaField");
    validate();
}

void BetaField::validate() const {
    for (const auto& b : beta_) {
        if (!b.allFinite()) throw std::invalid_argument("BetaField components must be finite");
    }
}

AugmentedColor lift(const Image& image, int i) {
    if (i < 0 || i >= image.pixel_count()) {
        throw std::out_of_range("lift: pixel index out of bounds");
    }
    return AugmentedColor(image.channel(i, 0), image.channel(i, 1), image.channel(i, 2));
}

AlphaMap reconstruct_alpha(const Image& image, const BetaField& beta) {
    if (image.width() != beta.width() || image.height() != beta.height()) {
        throw std::invalid_argument("reconstruct_alpha: dimension mismatch");
    }
    const int n = image.pixel_count();
    std::vector<double> alpha(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector4d x(image.channel(i, 0), image.channel(i, 1),
                                image.channel(i, 2), 1.0);
        alpha[static_cast<size_t>(i)] = x.dot(beta[i]);
    }
    return AlphaMap(image.width(), image.height(), std::move(alpha));
}

std::pair<AlphaMap, ConfidenceMap> trimap_to_alpha0(const Trimap& trimap,
                                                    double lambda_known) {
    if (!(lambda_known >= 0.0) || !std::isfinite(lambda_known)) {
        throw std::invalid_argument("trimap_to_alpha0: lambda_known must be nonnegative");
    }
    const int n = trimap.pixel_count();
    std::vector<double> alpha(static_cast<size_t>(n));
    std::vector<double> conf(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        switch (trimap.label(i)) {
            case TriLabel::Foreground:
                alpha[static_cast<size_t>(i)] = 1.0;
                conf[static_cast<size_t>(i)] = lambda_known;
                break;
            case TriLabel::Background:
                alpha[static_cast<size_t>(i)] = 0.0;
                conf[static_cast<size_t>(i)] = lambda_known;
                break;
            case TriLabel::Unknown:
                alpha[static_cast<size_t>(i)] = 0.5;
                conf[static_cast<size_t>(i)] = 0.0;
                break;
        }
    }
    return {AlphaMap(trimap.width(), trimap.height(), std::move(alpha)),
            ConfidenceMap(trimap.width(), trimap.height(), std::move(conf))};
}

} // namespace mcf
