#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mcf {

/// RGB image, three planes of values in [0,1], row-major.
class Image {
  public:
    Image(int width, int height);
    Image(int width, int height, std::array<std::vector<double>, 3> planes);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    double operator()(int x, int y, int c) const {
        return planes_[static_cast<size_t>(c)][static_cast<size_t>(y * width_ + x)];
    }
    double& operator()(int x, int y, int c) {
        return planes_[static_cast<size_t>(c)][static_cast<size_t>(y * width_ + x)];
    }
    double channel(int i, int c) const {
        return planes_[static_cast<size_t>(c)][static_cast<size_t>(i)];
    }

    const std::vector<double>& plane(int c) const { return planes_[static_cast<size_t>(c)]; }

    /// Throws std::invalid_argument if any value is non-finite or outside [0,1].
    void validate() const;

  private:
    int width_;
    int height_;
    std::array<std::vector<double>, 3> planes_;
};

/// Colour lifted to homogeneous form [R,G,B,1].
class AugmentedColor {
  public:
    explicit AugmentedColor(const Eigen::Vector4d& x);
    AugmentedColor(double r, double g, double b);

    const Eigen::Vector4d& vec() const { return x_; }

  private:
    Eigen::Vector4d x_;
};

enum class TriLabel : std::uint8_t { Background, Foreground, Unknown };

/// Per-pixel foreground/background/unknown labels.
class Trimap {
  public:
    Trimap(int width, int height, std::vector<TriLabel> labels);
    static Trimap uniform(int width, int height, TriLabel label);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    TriLabel operator()(int x, int y) const {
        return labels_[static_cast<size_t>(y * width_ + x)];
    }
    TriLabel label(int i) const { return labels_[static_cast<size_t>(i)]; }
    bool known(int i) const { return labels_[static_cast<size_t>(i)] != TriLabel::Unknown; }

    int count(TriLabel label) const;

  private:
    int width_;
    int height_;
    std::vector<TriLabel> labels_;
};

/// Scalar matte. Values are finite but may exceed [0,1]; raw solver output is
/// preserved and only clamped when exporting to an image file.
class AlphaMap {
  public:
    AlphaMap(int width, int height, std::vector<double> values);
    AlphaMap(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    double operator()(int x, int y) const {
        return values_[static_cast<size_t>(y * width_ + x)];
    }
    double& operator()(int x, int y) {
        return values_[static_cast<size_t>(y * width_ + x)];
    }
    double value(int i) const { return values_[static_cast<size_t>(i)]; }
    double& value(int i) { return values_[static_cast<size_t>(i)]; }

    const std::vector<double>& values() const { return values_; }

    void validate() const;

  private:
    int width_;
    int height_;
    std::vector<double> values_;
};

/// Per-pixel nonnegative confidence weights.
class ConfidenceMap {
  public:
    ConfidenceMap(int width, int height, std::vector<double> lambdas);
    ConfidenceMap(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    double operator()(int x, int y) const {
        return lambdas_[static_cast<size_t>(y * width_ + x)];
    }
    double& operator()(int x, int y) {
        return lambdas_[static_cast<size_t>(y * width_ + x)];
    }
    double value(int i) const { return lambdas_[static_cast<size_t>(i)]; }
    double& value(int i) { return lambdas_[static_cast<size_t>(i)]; }

    void validate() const;

  private:
    int width_;
    int height_;
    std::vector<double> lambdas_;
};

/// Per-pixel matting filter parameters [a_R, a_G, a_B, b]. The matte is
/// recovered from the filter as alpha = a.C + b per pixel.
class BetaField {
  public:
    BetaField(int width, int height);
    BetaField(int width, int height, std::vector<Eigen::Vector4d> beta);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    const Eigen::Vector4d& operator[](int i) const {
        return beta_[static_cast<size_t>(i)];
    }
    Eigen::Vector4d& operator[](int i) { return beta_[static_cast<size_t>(i)]; }

    const std::vector<Eigen::Vector4d>& data() const { return beta_; }

    void validate() const;

  private:
    int width_;
    int height_;
    std::vector<Eigen::Vector4d> beta_;
};

/// Homogeneous colour of pixel i. Throws std::out_of_range for a bad index.
AugmentedColor lift(const Image& image, int i);

/// alpha_i = X_i . beta_i, unclamped.
AlphaMap reconstruct_alpha(const Image& image, const BetaField& beta);

/// Fallback initial matte when no sampling-based estimate is available:
/// alpha0 is 1/0 on known pixels and 0.5 on unknown ones; the confidence is
/// lambda_known on known pixels and 0 on unknown ones, so the placeholder
/// value is never weighted into a solve.
std::pair<AlphaMap, ConfidenceMap> trimap_to_alpha0(const Trimap& trimap,
                                                    double lambda_known);

} // namespace mcf
