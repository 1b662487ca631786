#include <doctest.h>

#include <cmath>
#include <sstream>

#include "t4c/evaluation.hpp"
#include "t4c/linear_model.hpp"
#include "t4c/stitcher.hpp"
#include "test_support.hpp"

using namespace t4c;

namespace {

PredictionTensor random_u8(std::uint32_t frames, Index h, Index w, Rng& rng, double zero_share) {
    PredictionTensor p(frames, h, w, 8, Scale::Uint8);
    std::uniform_int_distribution<int> v(1, 255);
    std::bernoulli_distribution zero(zero_share);
    for (Index i = 0; i < p.grid.values.size(); ++i) p.grid.values.data()[i] = zero(rng) ? 0.0 : v(rng);
    return p;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a t4c::Error");
    return ErrorCode::Empty;
}

/// Always predicts the same normalized value everywhere.
class ConstantPredictor final : public Predictor {
public:
    ConstantPredictor(PatchSpec spec, double v) : spec_(std::move(spec)), v_(v) {}
    GridTensord predict(const GridTensord& input) const override {
        GridTensord out(spec_.out_planes(), input.height, input.width);
        out.values.setConstant(v_);
        return out;
    }

private:
    PatchSpec spec_;
    double v_;
};

FullRasterSample random_sample(Index h, Index w, const PatchSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    FullRasterSample s;
    s.window = t4c::testing::random_movie(12, static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(w), 8, seed);
    s.truth = random_u8(static_cast<std::uint32_t>(spec.out_frames()), h, w, rng, 0.5);
    return s;
}

}  // namespace

TEST_CASE("mse_uint8") {
    PredictionTensor zero(1, 2, 2, 8, Scale::Uint8), full(1, 2, 2, 8, Scale::Uint8);
    full.grid.values.setConstant(255.0);
    CHECK(mse_uint8(zero, full) == 65025.0);
    CHECK(mse_uint8(full, full) == 0.0);

    PredictionTensor zn(1, 2, 2, 8, Scale::Normalized), fn(1, 2, 2, 8, Scale::Normalized);
    fn.grid.values.setConstant(1.0);
    CHECK(mse_uint8(zn, fn) == doctest::Approx(65025.0));

    Rng rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        const PredictionTensor a = random_u8(6, 5, 7, rng, 0.3), b = random_u8(6, 5, 7, rng, 0.3);
        double s = 0.0;
        for (Index f = 0; f < 6; ++f)
            for (Index r = 0; r < 5; ++r)
                for (Index c = 0; c < 7; ++c)
                    for (Index ch = 0; ch < 8; ++ch) s += std::pow(a.at(f, r, c, ch) - b.at(f, r, c, ch), 2);
        CHECK(mse_uint8(a, b) == doctest::Approx(s / (6 * 5 * 7 * 8)).epsilon(1e-12));
    }

    CHECK(code_of([&] { mse_uint8(zero, zn); }) == ErrorCode::Scale);
    CHECK(code_of([&] { mse_uint8(zero, PredictionTensor(2, 2, 2, 8, Scale::Uint8)); }) == ErrorCode::Shape);
}

TEST_CASE("decomposition hand case") {
    PredictionTensor gt(1, 1, 2, 2, Scale::Uint8), pred(1, 1, 2, 2, Scale::Uint8);
    gt.at(0, 0, 0, 0) = 5.0;    // volume > 0: speed element in V
    gt.at(0, 0, 0, 1) = 100.0;
    gt.at(0, 0, 1, 0) = 0.0;    // volume 0: speed element in Vbar
    gt.at(0, 0, 1, 1) = 0.0;
    pred = gt;
    pred.at(0, 0, 0, 1) = 105.0;
    pred.at(0, 0, 1, 1) = 2.5;
    pred.at(0, 0, 0, 0) = 7.0;
    ChannelPairing pairing;
    pairing.pairs = {{0, 1}};
    const EvalReport r = decompose(pred, gt, pairing);
    CHECK(r.count_V == 1);
    CHECK(r.count_Vbar == 1);
    CHECK(*r.mse_speed_on_V == 25.0);
    CHECK(*r.mse_speed_on_Vbar == 6.25);
    CHECK(r.mse_speed == 15.625);
    CHECK(r.mse_volume == 2.0);
    CHECK(r.mse_total == doctest::Approx((4.0 + 25.0 + 6.25) / 4.0));
    CHECK(r.zero_fraction == 0.5);
    CHECK(*r.zero_recall == 1.0);
}

TEST_CASE("decomposition recombines into the speed MSE") {
    Rng rng(2);
    for (double zero_share : {0.1, 0.5, 0.95}) {
        const PredictionTensor gt = random_u8(6, 9, 11, rng, zero_share);
        const PredictionTensor pred = random_u8(6, 9, 11, rng, zero_share);
        const EvalReport r = decompose(pred, gt);
        const double nv = static_cast<double>(r.count_V), nb = static_cast<double>(r.count_Vbar);
        CHECK(std::abs((nv * r.mse_speed_on_V.value_or(0.0) + nb * r.mse_speed_on_Vbar.value_or(0.0)) / (nv + nb) -
                       r.mse_speed) <= 1e-9);
        CHECK(r.count_V + r.count_Vbar == 6 * 9 * 11 * 4);
        // total MSE is the mean of the volume and speed halves
        CHECK(std::abs(r.mse_total - 0.5 * (r.mse_volume + r.mse_speed)) <= 1e-9);

        const EvalReport self = decompose(gt, gt);
        CHECK(self.mse_total == 0.0);
        REQUIRE(self.zero_recall.has_value());
        CHECK(*self.zero_recall == 1.0);
    }
}

TEST_CASE("empty V or Vbar is reported as absent") {
    PredictionTensor gt(1, 2, 2, 8, Scale::Uint8);
    const EvalReport none_v = decompose(gt, gt);
    CHECK_FALSE(none_v.mse_speed_on_V.has_value());
    CHECK(none_v.count_Vbar == 16);
    CHECK(none_v.zero_fraction == 1.0);

    gt.grid.values.setConstant(9.0);
    const EvalReport all_v = decompose(gt, gt);
    CHECK_FALSE(all_v.mse_speed_on_Vbar.has_value());
    CHECK_FALSE(all_v.zero_recall.has_value());
    std::ostringstream out;
    write_report(out, all_v);
    CHECK(out.str().rfind("scale=u8\n", 0) == 0);
    CHECK(out.str().find("mse_speed_on_Vbar=absent") != std::string::npos);
}

TEST_CASE("normalized predictions are decomposed on the u8 scale") {
    Rng rng(3);
    const PredictionTensor gt = random_u8(2, 4, 4, rng, 0.5);
    const PredictionTensor pred = random_u8(2, 4, 4, rng, 0.5);
    PredictionTensor pn = pred, gn = gt;
    pn.grid.values /= 255.0;
    gn.grid.values /= 255.0;
    pn.scale = gn.scale = Scale::Normalized;
    const EvalReport a = decompose(pred, gt), b = decompose(pn, gn);
    CHECK(b.mse_total == doctest::Approx(a.mse_total).epsilon(1e-12));
    CHECK(b.count_V == a.count_V);
}

TEST_CASE("speed substitution in V") {
    Rng rng(4);
    PredictionTensor gt = random_u8(6, 8, 8, rng, 0.6);
    // speeds cluster near the middle of the range where volume is present
    for (Index f = 0; f < 6; ++f)
        for (Index r = 0; r < 8; ++r)
            for (Index c = 0; c < 8; ++c)
                for (Index h = 0; h < 4; ++h) gt.at(f, r, c, 2 * h + 1) = gt.at(f, r, c, 2 * h) > 0 ? 120.0 + (r + c) % 10 : 0.0;
    PredictionTensor pred = gt;
    for (Index i = 0; i < pred.grid.values.size(); ++i) pred.grid.values.data()[i] = 0.0;
    const SubstitutionResult res = substitute_speed_constant(pred, gt);
    CHECK(res.mse_before == doctest::Approx(mse_uint8(pred, gt)));
    CHECK(res.mse_after < res.mse_before);
    for (Index f = 0; f < 6; ++f)
        for (Index r = 0; r < 8; ++r)
            for (Index c = 0; c < 8; ++c)
                for (Index h = 0; h < 4; ++h)
                    CHECK(res.modified.at(f, r, c, 2 * h + 1) == (gt.at(f, r, c, 2 * h) > 0 ? 127.0 : 0.0));
    CHECK(res.modified.scale == Scale::Uint8);
}

TEST_CASE("quantized rounds half up on the u8 scale") {
    PredictionTensor p(1, 1, 1, 4, Scale::Normalized);
    p.grid.values << 0.5, 1.2, -0.1, 2.0 / 255.0;
    const PredictionTensor q = quantized(p);
    CHECK(q.scale == Scale::Uint8);
    CHECK(q.grid.values(0, 0) == 128.0);
    CHECK(q.grid.values(1, 0) == 255.0);
    CHECK(q.grid.values(2, 0) == 0.0);
    CHECK(q.grid.values(3, 0) == 2.0);
}

TEST_CASE("stride sweep") {
    PatchSpec spec;
    spec.d = 16;
    const std::vector<FullRasterSample> samples{random_sample(40, 35, spec, 1), random_sample(40, 35, spec, 2)};

    // a spatially constant predictor gives the same stitched output at every stride; 0.25 * 255 sits
    // away from a rounding tie, so averaging error cannot flip the quantized value
    const ConstantPredictor constant(spec, 0.25);
    const std::vector<Index> strides{4, 16, 8, 8};
    const auto rows = stride_sweep(constant, samples, spec, strides);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].stride == 16);
    CHECK(rows[2].stride == 4);
    CHECK(rows[0].patches == tile_grid(40, 35, 16, 16).patch_count());
    CHECK(rows[2].patches == tile_grid(40, 35, 16, 4).patch_count());
    CHECK(rows[0].mse == rows[1].mse);
    CHECK(rows[0].mse == rows[2].mse);
    PredictionTensor flat(6, 40, 35, 8, Scale::Uint8);
    flat.grid.values.setConstant(static_cast<double>(quantize(0.25)));
    CHECK(rows[0].mse == doctest::Approx(0.5 * (mse_uint8(flat, samples[0].truth) + mse_uint8(flat, samples[1].truth))));

    // per-cell linear model: stitching is stride invariant as well
    Rng rng(5);
    const LinearPredictor lin(LinearModeld::glorot(48, 96, rng));
    const auto lrows = stride_sweep(lin, samples, spec, strides);
    CHECK(lrows[0].mse == doctest::Approx(lrows[2].mse).epsilon(1e-12));
    CHECK(stride_sweep(lin, samples, spec, strides)[1].mse == lrows[1].mse);

    // single patch covering the whole raster
    PatchSpec whole = spec;
    whole.d = 35;
    const std::vector<FullRasterSample> square{random_sample(35, 35, whole, 3)};
    const std::vector<Index> one{35};
    const auto srows = stride_sweep(constant, square, whole, one);
    CHECK(srows.front().patches == 1);

    const std::vector<Index> bad{17};
    CHECK(code_of([&] { stride_sweep(constant, samples, spec, bad); }) == ErrorCode::Stride);
    CHECK(code_of([&] { stride_sweep(constant, std::span<const FullRasterSample>{}, spec, strides); }) == ErrorCode::Empty);

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    CHECK(csv.str().rfind("stride,patches,mse\n16,", 0) == 0);
}

TEST_CASE("competition-sized tiling count through the sweep path") {
    PatchSpec spec;
    FullRasterSample s;
    s.window = RasterMovie(12, 495, 436, 8);
    s.truth = PredictionTensor(6, 495, 436, 8, Scale::Uint8);
    const std::vector<FullRasterSample> samples{s};
    const ConstantPredictor zero(spec, 0.0);
    const std::vector<Index> strides{10};
    const auto rows = stride_sweep(zero, samples, spec, strides);
    CHECK(rows.front().patches == 1435);
    CHECK(rows.front().mse == 0.0);
}
