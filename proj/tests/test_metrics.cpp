#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mcf/metrics.hpp"
#include "support/oracles.hpp"
#include "support/synth.hpp"

using namespace mcf;

TEST_CASE("identical maps score perfect metrics") {
    std::mt19937 rng(71);
    const AlphaMap a = test::random_alpha(rng, 16, 16);
    CHECK(metrics::mad(a, a) == 0.0);
    CHECK(metrics::sad(a, a) == 0.0);
    CHECK(metrics::sad_unnormalized(a, a) == 0.0);
    CHECK(metrics::ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    const metrics::MatteMetrics m = metrics::compare(a, a);
    CHECK(m.ssim == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.mad == 0.0);
    CHECK(m.sad == 0.0);
}

TEST_CASE("mean absolute difference of a half-and-half map") {
    AlphaMap a(12, 12, 0.0);
    AlphaMap b(12, 12, 0.0);
    for (int y = 0; y < 12; ++y) {
        for (int x = 0; x < 6; ++x) b(x, y) = 0.5;
    }
    CHECK(metrics::mad(a, b) == doctest::Approx(0.25));
    CHECK(metrics::sad(a, b) == doctest::Approx(0.25));
    CHECK(metrics::sad_unnormalized(a, b) == doctest::Approx(0.5 * 72));
}

TEST_CASE("opposite constant maps separate cleanly") {
    const AlphaMap zeros(16, 16, 0.0);
    const AlphaMap ones(16, 16, 1.0);
    CHECK(metrics::mad(zeros, ones) == doctest::Approx(1.0));
    // both windows are flat, so only the luminance term survives:
    // c1 / (1 + c1) with c1 = 1e-4
    CHECK(metrics::ssim(zeros, ones) == doctest::Approx(1e-4 / 1.0001).epsilon(1e-9));
}

TEST_CASE("metrics are symmetric and mad satisfies the triangle inequality") {
    std::mt19937 rng(72);
    const AlphaMap a = test::random_alpha(rng, 13, 13);
    const AlphaMap b = test::random_alpha(rng, 13, 13);
    const AlphaMap c = test::random_alpha(rng, 13, 13);
    CHECK(metrics::mad(a, b) == metrics::mad(b, a));
    CHECK(metrics::ssim(a, b) == doctest::Approx(metrics::ssim(b, a)).epsilon(1e-12));
    CHECK(metrics::mad(a, c) <= metrics::mad(a, b) + metrics::mad(b, c) + 1e-12);
}

TEST_CASE("an inverted matte is structurally dissimilar") {
    const test::SuiteCase sc = test::suite_case(73, 32);
    AlphaMap inverted(32, 32, 0.0);
    for (int i = 0; i < 32 * 32; ++i) inverted.value(i) = 1.0 - sc.truth.value(i);
    CHECK(metrics::ssim(sc.truth, inverted) < 0.5);
    CHECK(metrics::ssim(sc.truth, sc.truth) > 0.999);
}

TEST_CASE("values outside the unit range are clamped before comparison") {
    AlphaMap hot(12, 12, 2.0);   // clamps to 1
    AlphaMap cold(12, 12, -1.0); // clamps to 0
    const AlphaMap ones(12, 12, 1.0);
    const AlphaMap zeros(12, 12, 0.0);
    CHECK(metrics::mad(hot, ones) == 0.0);
    CHECK(metrics::mad(cold, zeros) == 0.0);
    CHECK(metrics::ssim(hot, ones) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dimension checks") {
    const AlphaMap a(12, 12, 0.5);
    const AlphaMap b(12, 11, 0.5);
    CHECK_THROWS_AS(metrics::mad(a, b), std::invalid_argument);
    CHECK_THROWS_AS(metrics::ssim(a, b), std::invalid_argument);

    const AlphaMap small(10, 12, 0.5);
    const AlphaMap small2(10, 12, 0.5);
    CHECK_NOTHROW(metrics::mad(small, small2));
    CHECK_THROWS_AS(metrics::ssim(small, small2), std::invalid_argument);
}

TEST_CASE("structural similarity matches an independent implementation") {
    std::mt19937 rng(74);
    for (int k = 0; k < 5; ++k) {
        const AlphaMap a = test::random_alpha(rng, 16, 14);
        AlphaMap b = a;
        std::uniform_real_distribution<double> noise(-0.2, 0.2);
        for (int i = 0; i < b.pixel_count(); ++i) {
            b.value(i) = std::clamp(b.value(i) + noise(rng), 0.0, 1.0);
        }
        CHECK(metrics::ssim(a, b) == doctest::Approx(test::reference_ssim(a, b)).epsilon(1e-6));
    }
}

TEST_CASE("small perturbations score far better than large ones") {
    // A constant shift is punished hard in flat zero-alpha regions (the
    // luminance term drops to about one half there), so even a 0.01 shift
    // caps the score well below 1; it must still beat a 0.1 shift clearly.
    const test::SuiteCase sc = test::suite_case(75, 48);
    AlphaMap small(48, 48, 0.0);
    AlphaMap large(48, 48, 0.0);
    for (int i = 0; i < 48 * 48; ++i) {
        small.value(i) = std::clamp(sc.truth.value(i) + 0.01, 0.0, 1.0);
        large.value(i) = std::clamp(sc.truth.value(i) + 0.1, 0.0, 1.0);
    }
    const double ssim_small = metrics::ssim(sc.truth, small);
    const double ssim_large = metrics::ssim(sc.truth, large);
    CHECK(ssim_small > 0.85);
    CHECK(ssim_small < 1.0);
    CHECK(ssim_small > ssim_large + 0.1);
    CHECK(metrics::mad(sc.truth, small) < 0.011);
}
