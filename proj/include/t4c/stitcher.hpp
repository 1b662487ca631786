#pragma once

#include <cstddef>
#include <utility>

#include "t4c/patch_geometry.hpp"
#include "t4c/predictor.hpp"

namespace t4c {

/// Per-cell running sums and coverage counts for averaging overlapping patch predictions.
class StitchAccumulator {
public:
    StitchAccumulator(Index height, Index width, Index frames, Index channels);

    /// `prediction` holds frames * channels planes over a d x d footprint at `origin`.
    void add_patch(const GridTensord& prediction, Origin origin);

    /// Per-cell mean; throws a coverage error naming the first uncovered cell.
    std::pair<PredictionTensor, CoverageMap> finalize() const;

    Index height() const { return height_; }
    Index width() const { return width_; }
    Index frames() const { return frames_; }
    Index channels() const { return channels_; }
    const CoverageMap& counts() const { return counts_; }

private:
    Index height_, width_, frames_, channels_;
    Planes<double> sums_;  // (frames * channels) x (height * width)
    CoverageMap counts_;   // height x width
};

struct TiledPrediction {
    PredictionTensor prediction;  // normalized
    CoverageMap coverage;
    std::size_t patches = 0;
};

/// Tiles the input hour with stride s, predicts each padded patch, crops the center d x d
/// and averages overlaps. `window` must hold at least spec.in_slots slots; slot 0 is t0.
TiledPrediction predict_tiled(const Predictor& predictor, const RasterMovie& window, const PatchSpec& spec, Index stride);

}  // namespace t4c
