#include <doctest.h>

#include <stdexcept>

#include "gkm/metrics.hpp"
#include "oracles.hpp"

using namespace gkm;

TEST_CASE("psnr closed-form values") {
    Image a(1, 10, 10, 0.5);
    Image b = a;
    for (double& v : b.data) v += 0.1;  // MSE = 0.01 -> 20 dB
    CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-9));

    Image c = a;
    for (double& v : c.data) v += 0.01;  // MSE = 1e-4 -> 40 dB
    CHECK(psnr(a, c) == doctest::Approx(40.0).epsilon(1e-9));
}

TEST_CASE("psnr caps at 100 dB") {
    Image a = oracle::random_image(3, 8, 8, 1);
    CHECK(psnr(a, a) == 100.0);
    Image b = a;
    b.data[0] += 1e-9;  // tiny MSE, above the cap
    CHECK(psnr(a, b) == 100.0);
}

TEST_CASE("psnr matches the direct oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Image a = oracle::random_image(2, 13, 9, rng());
        Image b = oracle::random_image(2, 13, 9, rng());
        CHECK(psnr(a, b) == doctest::Approx(oracle::psnr_ref(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("ssim of an image with itself is exactly one") {
    Image a = oracle::random_image(1, 24, 24, 9);
    CHECK(ssim(a, a) == 1.0);
}

TEST_CASE("ssim is symmetric") {
    Image a = oracle::random_image(1, 20, 20, 11);
    Image b = oracle::random_image(1, 20, 20, 12);
    CHECK(ssim(a, b) == ssim(b, a));
}

TEST_CASE("ssim is low for an inverted image") {
    Image a = oracle::random_image(1, 32, 32, 13);
    Image inv = a;
    for (double& v : inv.data) v = 1.0 - v;
    CHECK(ssim(a, inv) < 0.1);
}

TEST_CASE("ssim matches the direct window oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        Image a = oracle::random_image(1, 19, 23, rng());
        Image b = a;
        std::normal_distribution<double> noise(0.0, 0.05);
        std::mt19937_64 nrng(rng());
        for (double& v : b.data) v += noise(nrng);
        CHECK(std::abs(ssim(a, b) - oracle::ssim_ref(a, b)) <= 1e-6);
    }
}

TEST_CASE("ssim needs at least one full window") {
    Image tiny = oracle::random_image(1, 10, 10, 5);
    CHECK_THROWS_AS(ssim(tiny, tiny), std::invalid_argument);
    Image ok = oracle::random_image(1, 11, 11, 5);
    CHECK(ssim(ok, ok) == 1.0);
}

TEST_CASE("metric shape mismatches are errors") {
    Image a(1, 16, 16, 0.5);
    Image b(1, 16, 17, 0.5);
    CHECK_THROWS_AS(psnr(a, b), std::invalid_argument);
    CHECK_THROWS_AS(ssim(a, b), std::invalid_argument);
}
