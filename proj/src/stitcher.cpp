#include "t4c/stitcher.hpp"

#include <string>

namespace t4c {

StitchAccumulator::StitchAccumulator(Index height, Index width, Index frames, Index channels)
    : height_(height), width_(width), frames_(frames), channels_(channels) {
    if (height < 1 || width < 1 || frames < 1 || channels < 1) {
        throw Error(ErrorCode::Size, "accumulator dims must be positive");
    }
    sums_ = Planes<double>::Zero(frames * channels, height * width);
    counts_ = CoverageMap::Zero(height, width);
}

void StitchAccumulator::add_patch(const GridTensord& prediction, Origin origin) {
    const Index h = prediction.height, w = prediction.width;
    if (prediction.planes() != frames_ * channels_) {
        throw Error(ErrorCode::Shape, "patch has " + std::to_string(prediction.planes()) + " planes, expected " +
                                          std::to_string(frames_ * channels_));
    }
    if (origin.row < 0 || origin.col < 0 || origin.row + h > height_ || origin.col + w > width_) {
        throw Error(ErrorCode::Bounds, "patch at (" + std::to_string(origin.row) + "," + std::to_string(origin.col) +
                                           ") exceeds the raster");
    }
    if (!prediction.values.allFinite()) throw Error(ErrorCode::Numeric, "patch prediction has non-finite values");
    for (Index r = 0; r < h; ++r) {
        sums_.middleCols((origin.row + r) * width_ + origin.col, w) += prediction.values.middleCols(r * w, w);
    }
    counts_.block(origin.row, origin.col, h, w).array() += 1;
}

std::pair<PredictionTensor, CoverageMap> StitchAccumulator::finalize() const {
    for (Index r = 0; r < height_; ++r) {
        for (Index c = 0; c < width_; ++c) {
            if (counts_(r, c) == 0) {
                throw Error(ErrorCode::Coverage,
                            "cell (" + std::to_string(r) + "," + std::to_string(c) + ") has no patch prediction");
            }
        }
    }
    PredictionTensor out(static_cast<std::uint32_t>(frames_), height_, width_, static_cast<std::uint32_t>(channels_),
                         Scale::Normalized);
    for (Index r = 0; r < height_; ++r) {
        for (Index c = 0; c < width_; ++c) {
            const Index cell = r * width_ + c;
            out.grid.values.col(cell) = sums_.col(cell) / static_cast<double>(counts_(r, c));
        }
    }
    return {std::move(out), counts_};
}

TiledPrediction predict_tiled(const Predictor& predictor, const RasterMovie& window, const PatchSpec& spec, Index stride) {
    spec.validate();
    const TileGrid grid = tile_grid(window.height, window.width, spec.d, stride);
    StitchAccumulator acc(window.height, window.width, spec.out_frames(), spec.channels);
    for (const Origin& origin : grid.origins()) {
        const GridTensord input = extract_input(window, 0, origin, spec);
        const GridTensord output = predictor.predict_at(input, origin);
        if (output.planes() != spec.out_planes() || output.height != spec.side() || output.width != spec.side()) {
            throw Error(ErrorCode::Shape, "predictor output does not match the padded patch extent");
        }
        acc.add_patch(crop_center(output, spec.pad), origin);
    }
    auto [prediction, coverage] = acc.finalize();
    return {std::move(prediction), std::move(coverage), grid.patch_count()};
}

}  // namespace t4c
