#pragma once

#include "t4c/patch_geometry.hpp"

namespace t4c {

/// Maps a padded input patch (in_planes x P x P, normalized) to a prediction of the same
/// spatial extent (out_planes x P x P, values in [0, 1]). Callers crop the center d x d.
class Predictor {
public:
    virtual ~Predictor() = default;

    virtual GridTensord predict(const GridTensord& input) const = 0;

    /// Position-aware entry point used by tiled inference.
    virtual GridTensord predict_at(const GridTensord& input, Origin /*origin*/) const { return predict(input); }
};

/// Repeats the last observed slot for every output frame.
class PersistencePredictor final : public Predictor {
public:
    explicit PersistencePredictor(PatchSpec spec);
    GridTensord predict(const GridTensord& input) const override;

private:
    PatchSpec spec_;
};

GridTensord predict_persistence(const GridTensord& input, const PatchSpec& spec);

/// Serves crops of an externally produced full-raster prediction ("T4CP" file).
class FilePredictor final : public Predictor {
public:
    FilePredictor(PredictionTensor prediction, PatchSpec spec);
    GridTensord predict(const GridTensord& input) const override;
    GridTensord predict_at(const GridTensord& input, Origin origin) const override;

private:
    PredictionTensor prediction_;  // normalized
    PatchSpec spec_;
};

}  // namespace t4c
