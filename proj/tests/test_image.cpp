#include <doctest.h>

#include "gkm/image.hpp"
#include "oracles.hpp"

using namespace gkm;

TEST_CASE("downsample2 preserves constants") {
    Image img(1, 8, 8, 0.5);
    Image out = downsample2(img);
    CHECK(out.height == 4);
    CHECK(out.width == 4);
    for (double v : out.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("downsample2 2x2 mean") {
    Image img(1, 2, 2);
    img.at(0, 0, 0) = 0.0;
    img.at(0, 0, 1) = 1.0;
    img.at(0, 1, 0) = 0.0;
    img.at(0, 1, 1) = 1.0;
    Image out = downsample2(img);
    CHECK(out.height == 1);
    CHECK(out.width == 1);
    CHECK(out.at(0, 0, 0) == doctest::Approx(0.5));
}

TEST_CASE("downsample2 5x4 border replication, hand oracle") {
    Image img(1, 5, 4);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 4; ++j) img.at(0, i, j) = i * 10 + j;
    Image out = downsample2(img);
    CHECK(out.height == 3);
    CHECK(out.width == 2);
    CHECK(out.at(0, 0, 0) == doctest::Approx(5.5));
    CHECK(out.at(0, 0, 1) == doctest::Approx(7.5));
    CHECK(out.at(0, 1, 0) == doctest::Approx(25.5));
    CHECK(out.at(0, 1, 1) == doctest::Approx(27.5));
    // bottom row replicated
    CHECK(out.at(0, 2, 0) == doctest::Approx(40.5));
    CHECK(out.at(0, 2, 1) == doctest::Approx(42.5));
}

TEST_CASE("downsample2 rejects tiny images") {
    Image img(1, 1, 5, 0.0);
    CHECK_THROWS_AS(downsample2(img), std::invalid_argument);
}

TEST_CASE("upsample2 constants and endpoints") {
    Image img(1, 3, 3, 0.25);
    Image out = upsample2(img, 6, 6);
    for (double v : out.data) CHECK(v == 0.25);

    Image row(1, 1, 2);
    row.at(0, 0, 0) = 0.0;
    row.at(0, 0, 1) = 1.0;
    Image up = upsample2(row, 1, 4);
    CHECK(up.at(0, 0, 0) == doctest::Approx(0.0));
    CHECK(up.at(0, 0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(up.at(0, 0, 2) == doctest::Approx(2.0 / 3.0));
    CHECK(up.at(0, 0, 3) == doctest::Approx(1.0));
}

TEST_CASE("upsample2 rejects out-of-window targets") {
    Image img(1, 4, 4, 0.0);
    CHECK_THROWS_AS(upsample2(img, 9, 8), std::invalid_argument);
    CHECK_THROWS_AS(upsample2(img, 8, 6), std::invalid_argument);
}

TEST_CASE("downsample/upsample round trip of a constant is exact") {
    Image img(3, 7, 9, 0.625);
    Image down = downsample2(img);
    Image back = upsample2(down, 7, 9);
    for (double v : back.data) CHECK(v == 0.625);
}

TEST_CASE("build_pyramid basics") {
    Image img = oracle::random_image(1, 16, 16, 3);
    Pyramid single = build_pyramid(img, 1);
    CHECK(single.scales() == 1);
    CHECK(single.levels[0].data == img.data);

    Image big(1, 256, 256, 0.3);
    Pyramid pyr = build_pyramid(big, 3);
    CHECK(pyr.levels[0].height == 64);
    CHECK(pyr.levels[1].height == 128);
    CHECK(pyr.levels[2].height == 256);
    for (const Image& level : pyr.levels)
        for (double v : level.data) CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(pyr.levels[2].data == big.data);
}

TEST_CASE("build_pyramid ceil recurrence over all small sizes") {
    for (int h = 2; h <= 64; ++h) {
        int scales = 2;
        if (h < 4) scales = 1;
        Image img(1, h, h, 0.0);
        Pyramid pyr = build_pyramid(img, scales);
        for (int t = 0; t < scales; ++t) {
            int shift = scales - 1 - t;
            int expect = h;
            for (int s = 0; s < shift; ++s) expect = (expect + 1) / 2;
            CHECK(pyr.levels[t].height == expect);
        }
    }
}

TEST_CASE("build_pyramid rejects too many scales") {
    Image img(1, 4, 4, 0.0);
    CHECK_THROWS_AS(build_pyramid(img, 4), std::invalid_argument);
}
