#include "t4c/predictor.hpp"

namespace t4c {

GridTensord predict_persistence(const GridTensord& input, const PatchSpec& spec) {
    if (input.planes() != spec.in_planes() || input.height != input.width) {
        throw Error(ErrorCode::Shape, "persistence input must be " + std::to_string(spec.in_planes()) +
                                          " square planes, got " + std::to_string(input.planes()));
    }
    GridTensord out(spec.out_planes(), input.height, input.width);
    const auto last = input.values.middleRows((spec.in_slots - 1) * spec.channels, spec.channels);
    for (Index f = 0; f < spec.out_frames(); ++f) out.values.middleRows(f * spec.channels, spec.channels) = last;
    return out;
}

PersistencePredictor::PersistencePredictor(PatchSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

GridTensord PersistencePredictor::predict(const GridTensord& input) const { return predict_persistence(input, spec_); }

FilePredictor::FilePredictor(PredictionTensor prediction, PatchSpec spec)
    : prediction_(std::move(prediction)), spec_(std::move(spec)) {
    spec_.validate();
    if (prediction_.scale == Scale::Uint8) {
        prediction_.grid.values /= 255.0;
        prediction_.scale = Scale::Normalized;
    }
    if (prediction_.grid.planes() != spec_.out_planes()) {
        throw Error(ErrorCode::Shape, "prediction file planes do not match the patch spec");
    }
}

GridTensord FilePredictor::predict(const GridTensord& /*input*/) const {
    throw Error(ErrorCode::Config, "file predictor needs the patch origin");
}

GridTensord FilePredictor::predict_at(const GridTensord& input, Origin origin) const {
    if (input.height != spec_.side() || input.width != spec_.side()) {
        throw Error(ErrorCode::Shape, "input patch side does not match the patch spec");
    }
    GridTensord out(spec_.out_planes(), spec_.side(), spec_.side());
    const auto center = crop(prediction_.grid, origin.row, origin.col, spec_.d, spec_.d);
    for (Index r = 0; r < spec_.d; ++r) {
        out.values.middleCols((r + spec_.pad) * out.width + spec_.pad, spec_.d) = center.values.middleCols(r * spec_.d, spec_.d);
    }
    return out;
}

}  // namespace t4c
