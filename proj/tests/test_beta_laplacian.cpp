#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mcf/beta_laplacian.hpp"
#include "mcf/core.hpp"
#include "support/oracles.hpp"
#include "support/synth.hpp"

using namespace mcf;
using laplacian::MomentField;
using laplacian::SpatialPrior;

namespace {

Eigen::VectorXd stack(const BetaField& beta) {
    Eigen::VectorXd v(4 * beta.pixel_count());
    for (int i = 0; i < beta.pixel_count(); ++i) v.segment<4>(4 * i) = beta[i];
    return v;
}

double quad_form(const sparse::BlockSparseMatrix& a, const BetaField& beta) {
    const Eigen::VectorXd v = stack(beta);
    return v.dot(a.multiply(v));
}

Image constant_image(int w, int h, double r, double g, double b) {
    Image img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img(x, y, 0) = r;
            img(x, y, 1) = g;
            img(x, y, 2) = b;
        }
    }
    return img;
}

} // namespace

TEST_CASE("raw moments are homogeneous colour outer products") {
    std::mt19937 rng(31);
    const Image img = test::random_image(rng, 4, 3);
    const MomentField m = laplacian::moments(img, SpatialPrior::none());
    REQUIRE(m.width == 4);
    REQUIRE(m.height == 3);
    for (int i = 0; i < img.pixel_count(); ++i) {
        const Eigen::Vector4d x = lift(img, i).vec();
        CHECK((m[i] - x * x.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }

    // A black pixel lifts to (0,0,0,1), so its moment is a single corner 1.
    const Image black = constant_image(1, 2, 0.0, 0.0, 0.0);
    const MomentField mb = laplacian::moments(black, SpatialPrior::none());
    Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
    expected(3, 3) = 1.0;
    CHECK((mb[0] - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the isotropic prior inflates every moment by eps_s") {
    std::mt19937 rng(32);
    const Image img = test::random_image(rng, 5, 4);
    const MomentField none = laplacian::moments(img, SpatialPrior::none());
    const MomentField iso = laplacian::moments(img, SpatialPrior::isotropic(0.25));
    for (int i = 0; i < img.pixel_count(); ++i) {
        const Eigen::Matrix4d diff = iso[i] - none[i];
        CHECK((diff - 0.25 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    }
    CHECK_THROWS_AS(SpatialPrior::isotropic(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpatialPrior::smoothed_moments(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpatialPrior::smoothed_moments(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("moment smoothing is exact on constant fields") {
    // On a constant image every moment entry is spatially constant, so the
    // normalized blur must return it unchanged and the result reduces to the
    // isotropic prior.
    const Image img = constant_image(9, 7, 0.3, 0.6, 0.9);
    const MomentField smoothed =
        laplacian::moments(img, SpatialPrior::smoothed_moments(1.5, 1e-4));
    const MomentField iso = laplacian::moments(img, SpatialPrior::isotropic(1e-4));
    for (int i = 0; i < img.pixel_count(); ++i) {
        CHECK((smoothed[i] - iso[i]).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("the homogeneous entry survives smoothing on any image") {
    // Entry (3,3) of X X^T is identically 1, so after a normalized blur it
    // must still be 1 (+ eps_s) regardless of the colour content.
    std::mt19937 rng(33);
    const Image img = test::random_image(rng, 12, 9);
    const double eps = 2e-4;
    const MomentField m = laplacian::moments(img, SpatialPrior::smoothed_moments(1.0, eps));
    for (int i = 0; i < img.pixel_count(); ++i) {
        CHECK(m[i](3, 3) == doctest::Approx(1.0 + eps).epsilon(1e-12));
    }
}

TEST_CASE("five-point blocks on a two-pixel black image are exact") {
    const Image black = constant_image(2, 1, 0.0, 0.0, 0.0);
    const MomentField m = laplacian::moments(black, SpatialPrior::none());
    const sparse::BlockSparseMatrix a = laplacian::assemble_five_point(m);

    Eigen::Matrix4d corner = Eigen::Matrix4d::Zero();
    corner(3, 3) = 1.0;
    REQUIRE(a.block(0, 1) != nullptr);
    CHECK((*a.block(0, 1) + corner).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.diagonal_block(0) - corner).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.diagonal_block(1) - corner).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembly preconditions") {
    const Image one = constant_image(1, 1, 0.5, 0.5, 0.5);
    const MomentField m1 = laplacian::moments(one, SpatialPrior::none());
    CHECK_THROWS_AS(laplacian::assemble_five_point(m1), std::invalid_argument);

    std::mt19937 rng(34);
    const Image small = test::random_image(rng, 3, 2);
    const MomentField ms = laplacian::moments(small, SpatialPrior::none());
    CHECK_THROWS_AS(laplacian::assemble_general(ms, 1), std::invalid_argument);
    const Image ok = test::random_image(rng, 3, 3);
    const MomentField mo = laplacian::moments(ok, SpatialPrior::none());
    CHECK_THROWS_AS(laplacian::assemble_general(mo, 0), std::invalid_argument);
    CHECK_THROWS_AS(laplacian::assemble_general(mo, 2), std::invalid_argument);
    CHECK_NOTHROW(laplacian::assemble_general(mo, 1));
}

TEST_CASE("radius-1 windows on a 3x3 image couple every pixel pair") {
    std::mt19937 rng(35);
    const Image img = test::random_image(rng, 3, 3);
    const MomentField m = laplacian::moments(img, SpatialPrior::none());
    const sparse::BlockSparseMatrix a = laplacian::assemble_general(m, 1);
    CHECK(a.stored_blocks() == 81);
}

TEST_CASE("constant filter fields lie in the null space") {
    std::mt19937 rng(36);
    const Image img = test::random_image(rng, 7, 5);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    BetaField beta(7, 5);
    const Eigen::Vector4d c(uni(rng), uni(rng), uni(rng), uni(rng));
    for (int i = 0; i < beta.pixel_count(); ++i) beta[i] = c;
    const Eigen::VectorXd v = stack(beta);

    for (const SpatialPrior& prior :
         {SpatialPrior::none(), SpatialPrior::isotropic(1e-4),
          SpatialPrior::smoothed_moments(1.0, 1e-4)}) {
        const MomentField m = laplacian::moments(img, prior);
        CHECK(laplacian::assemble_five_point(m).multiply(v).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(laplacian::assemble_general(m, 1).multiply(v).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(laplacian::assemble_general(m, 2).multiply(v).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("quadratic forms are positive semidefinite") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const Image img = test::random_image(rng, 6, 6);
        const MomentField m = laplacian::moments(img, SpatialPrior::isotropic(1e-4));
        const sparse::BlockSparseMatrix five = laplacian::assemble_five_point(m);
        const sparse::BlockSparseMatrix gen = laplacian::assemble_general(m, 1);
        for (int k = 0; k < 5; ++k) {
            const BetaField beta = test::random_beta(rng, 6, 6);
            CHECK(quad_form(five, beta) >= -1e-9);
            CHECK(quad_form(gen, beta) >= -1e-9);
        }
    }
}

TEST_CASE("window energy matches the direct per-window evaluation") {
    std::mt19937 rng(38);
    const Image img = test::random_image(rng, 6, 6);
    for (int radius : {1, 2}) {
        const MomentField raw = laplacian::moments(img, SpatialPrior::none());
        const MomentField iso = laplacian::moments(img, SpatialPrior::isotropic(3e-3));
        const sparse::BlockSparseMatrix a_raw = laplacian::assemble_general(raw, radius);
        const sparse::BlockSparseMatrix a_iso = laplacian::assemble_general(iso, radius);
        for (int k = 0; k < 20; ++k) {
            const BetaField beta = test::random_beta(rng, 6, 6);
            const double direct = test::window_energy_scalar(img, radius, beta);
            const double assembled = quad_form(a_raw, beta);
            CHECK(std::abs(assembled - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));

            const double direct_m = test::window_energy_moments(iso, radius, beta);
            const double assembled_m = quad_form(a_iso, beta);
            CHECK(std::abs(assembled_m - direct_m) <=
                  1e-10 * std::max(1.0, std::abs(direct_m)));
        }
    }
}

TEST_CASE("five-point energy equals the two-member group evaluation") {
    std::mt19937 rng(39);
    const Image img = test::random_image(rng, 5, 7);
    const MomentField m = laplacian::moments(img, SpatialPrior::isotropic(1e-3));
    const sparse::BlockSparseMatrix a = laplacian::assemble_five_point(m);
    for (int k = 0; k < 20; ++k) {
        const BetaField beta = test::random_beta(rng, 5, 7);
        const double direct = test::pair_energy_moments(m, beta);
        const double assembled = quad_form(a, beta);
        CHECK(std::abs(assembled - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("five-point matrix equals the dense residual-row construction") {
    std::mt19937 rng(40);
    const Image img = test::random_image(rng, 5, 4);
    const MomentField m = laplacian::moments(img, SpatialPrior::none());
    const Eigen::MatrixXd assembled = laplacian::assemble_five_point(m).to_dense();
    const Eigen::MatrixXd direct = test::dense_five_point_rows(img);
    CHECK((assembled - direct).cwiseAbs().maxCoeff() < 1e-12);
}
