#include <doctest.h>

#include <cmath>
#include <set>

#include "t4c/patch_geometry.hpp"
#include "test_support.hpp"

using namespace t4c;

namespace {

// Every distinct clamped origin min(i * s, E - d), enumerated far past the edge.
std::vector<Index> enumerate_starts(Index extent, Index d, Index s) {
    std::set<Index> starts;
    for (Index i = 0; i <= extent; ++i) starts.insert(std::min(i * s, extent - d));
    return {starts.begin(), starts.end()};
}

Eigen::MatrixXi brute_coverage(const TileGrid& g) {
    Eigen::MatrixXi cov = Eigen::MatrixXi::Zero(g.height, g.width);
    for (const Origin& o : g.origins())
        for (Index r = o.row; r < o.row + g.d; ++r)
            for (Index c = o.col; c < o.col + g.d; ++c) ++cov(r, c);
    return cov;
}

}  // namespace

TEST_CASE("tile_starts reproduces the competition raster counts") {
    const auto rows = tile_starts(495, 100, 10);
    CHECK(rows.size() == 41);
    CHECK(rows.front() == 0);
    CHECK(rows[39] == 390);
    CHECK(rows.back() == 395);
    CHECK(tile_starts(436, 100, 10).size() == 35);
    CHECK(tile_starts(100, 100, 50) == std::vector<Index>{0});
    CHECK(tile_starts(495, 100, 50) == std::vector<Index>{0, 50, 100, 150, 200, 250, 300, 350, 395});
}

TEST_CASE("tile_starts count identity over an exhaustive small sweep") {
    for (Index e = 1; e <= 64; ++e)
        for (Index d = 1; d <= e; ++d)
            for (Index s = 1; s <= d; ++s) {
                const auto starts = tile_starts(e, d, s);
                REQUIRE(starts == enumerate_starts(e, d, s));
                CHECK(static_cast<Index>(starts.size()) == (e - d + s + s - 1) / s);
                CHECK(starts.back() == e - d);
                if ((e - d) % s == 0) {
                    for (std::size_t i = 0; i < starts.size(); ++i) CHECK(starts[i] == static_cast<Index>(i) * s);
                }
            }
}

TEST_CASE("tile_starts errors") {
    CHECK_THROWS_AS(tile_starts(100, 50, 60), Error);
    CHECK_THROWS_AS(tile_starts(50, 60, 10), Error);
    CHECK_THROWS_AS(tile_starts(50, 10, 0), Error);
    try {
        tile_starts(100, 50, 60);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Stride);
    }
    try {
        tile_starts(50, 60, 10);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Size);
    }
}

TEST_CASE("tile_grid patch counts") {
    CHECK(tile_grid(495, 436, 100, 10).patch_count() == 1435);
    CHECK(tile_grid(495, 436, 100, 50).patch_count() == 72);
    CHECK(tile_grid(100, 100, 100, 100).patch_count() == 1);
    CHECK(tile_grid(99, 87, 32, 16).patch_count() == 30);
}

TEST_CASE("coverage_map agrees with brute force") {
    const TileGrid g = tile_grid(495, 436, 100, 10);
    const CoverageMap cov = coverage_map(495, 436, g);
    CHECK(cov == brute_coverage(g));
    CHECK(cov.maxCoeff() == 121);
    CHECK(cov.minCoeff() >= 1);
    CHECK(cov(200, 200) == 100);

    const TileGrid g50 = tile_grid(495, 436, 100, 50);
    const CoverageMap cov50 = coverage_map(495, 436, g50);
    CHECK(cov50 == brute_coverage(g50));
    CHECK(cov50.minCoeff() >= 1);

    const TileGrid single = tile_grid(64, 64, 64, 10);
    CHECK((coverage_map(64, 64, single).array() == 1).all());
}

TEST_CASE("sample_patch_origin") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) CHECK(sample_patch_origin(rng, 40, 40, 40) == Origin{0, 0});

    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(sample_patch_origin(a, 495, 436, 100) == sample_patch_origin(b, 495, 436, 100));

    // Uniform on {0..395}: mean 197.5, sd of a single draw sqrt((396^2 - 1) / 12).
    Rng rng2(17);
    const int n = 100000;
    double sum = 0.0;
    Index lo = 1000, hi = -1;
    for (int i = 0; i < n; ++i) {
        const Origin o = sample_patch_origin(rng2, 495, 436, 100);
        sum += static_cast<double>(o.row);
        lo = std::min(lo, o.row);
        hi = std::max({hi, o.row, o.col});
        CHECK(o.col <= 336);
    }
    const double sd = std::sqrt((396.0 * 396.0 - 1.0) / 12.0);
    CHECK(std::abs(sum / n - 197.5) <= 3.0 * sd / std::sqrt(double(n)));
    CHECK(lo == 0);
    CHECK(hi == 395);
    CHECK_THROWS_AS(sample_patch_origin(rng2, 50, 40, 45), Error);
}

TEST_CASE("extract_input shape, padding and ordering") {
    PatchSpec spec;
    spec.d = 100;
    RasterMovie zeros(24, 120, 110, 8);
    const GridTensord in = extract_input(zeros, 0, {10, 5}, spec);
    CHECK(in.planes() == 96);
    CHECK(in.height == 112);
    CHECK(in.width == 112);
    CHECK(in.values.isZero());

    PatchSpec small;
    small.d = 10;
    RasterMovie full(24, 20, 20, 8);
    std::fill(full.data.begin(), full.data.end(), std::uint8_t{255});
    const GridTensord ring = extract_input(full, 3, {4, 4}, small);
    for (Index r = 0; r < ring.height; ++r)
        for (Index c = 0; c < ring.width; ++c) {
            const bool inside = r >= 6 && r < 16 && c >= 6 && c < 16;
            for (Index p = 0; p < 96; ++p) REQUIRE(ring(p, r, c) == (inside ? 1.0 : 0.0));
        }
}

TEST_CASE("extract_input agrees with manual indexing on random probes") {
    const RasterMovie m = t4c::testing::random_movie(40, 30, 25, 8, 3);
    PatchSpec spec;
    spec.d = 12;
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const Index t0 = std::uniform_int_distribution<Index>(0, 40 - 24)(rng);
        const Origin o = sample_patch_origin(rng, 30, 25, spec.d);
        const GridTensord in = extract_input(m, t0, o, spec);
        const GridTensord tgt = extract_target(m, t0, o, spec);
        for (int probe = 0; probe < 50; ++probe) {
            const Index slot = std::uniform_int_distribution<Index>(0, 11)(rng);
            const Index ch = std::uniform_int_distribution<Index>(0, 7)(rng);
            const Index r = std::uniform_int_distribution<Index>(0, spec.d - 1)(rng);
            const Index c = std::uniform_int_distribution<Index>(0, spec.d - 1)(rng);
            const auto raw = m.at(static_cast<std::uint32_t>(t0 + slot), static_cast<std::uint32_t>(o.row + r),
                                  static_cast<std::uint32_t>(o.col + c), static_cast<std::uint32_t>(ch));
            CHECK(in(slot * 8 + ch, r + 6, c + 6) == raw / 255.0);
            const Index f = std::uniform_int_distribution<Index>(0, 5)(rng);
            const Index t = t0 + 11 + spec.out_offsets[static_cast<std::size_t>(f)];
            const auto fut = m.at(static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(o.row + r),
                                  static_cast<std::uint32_t>(o.col + c), static_cast<std::uint32_t>(ch));
            CHECK(tgt(f * 8 + ch, r, c) == fut / 255.0);
        }
    }
}

TEST_CASE("extract_target shapes and offsets") {
    PatchSpec spec;
    spec.d = 16;
    RasterMovie m(40, 20, 20, 8);
    std::fill(m.data.begin(), m.data.end(), std::uint8_t{51});
    const GridTensord t = extract_target(m, 0, {0, 0}, spec);
    CHECK(t.planes() == 48);
    CHECK(t.height == 16);
    CHECK((t.values.array() == 51.0 / 255.0).all());

    PatchSpec hour = spec;
    hour.out_offsets = {12};
    RasterMovie ramp(30, 16, 16, 8);
    for (std::uint32_t s = 0; s < 30; ++s)
        for (std::uint32_t r = 0; r < 16; ++r)
            for (std::uint32_t c = 0; c < 16; ++c) ramp.at(s, r, c, 0) = static_cast<std::uint8_t>(s);
    const GridTensord one = extract_target(ramp, 2, {0, 0}, hour);
    CHECK(one.planes() == 8);
    CHECK(one(0, 3, 3) == (2 + 11 + 12) / 255.0);
}

TEST_CASE("extraction bounds errors") {
    PatchSpec spec;
    spec.d = 10;
    RasterMovie m(24, 20, 20, 8);
    CHECK_THROWS_AS(extract_input(m, 13, {0, 0}, spec), Error);
    CHECK_NOTHROW(extract_input(m, 12, {0, 0}, spec));
    CHECK_THROWS_AS(extract_input(m, 0, {11, 0}, spec), Error);
    CHECK_THROWS_AS(extract_input(m, -1, {0, 0}, spec), Error);
    CHECK_THROWS_AS(extract_target(m, 1, {0, 0}, spec), Error);
    CHECK_NOTHROW(extract_target(m, 0, {0, 0}, spec));
}

TEST_CASE("PatchSpec validation") {
    PatchSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.out_offsets = {1, 3, 2};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.out_offsets = {1, 13};
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.out_offsets = {1};
    spec.d = 0;
    CHECK_THROWS_AS(spec.validate(), Error);
}
