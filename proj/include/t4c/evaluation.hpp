#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "t4c/dataset_cache.hpp"
#include "t4c/predictor.hpp"

namespace t4c {

/// (volume, speed) channel pairs per heading; volume even, speed odd by default.
struct ChannelPairing {
    std::vector<std::pair<Index, Index>> pairs{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
};

/// Error decomposition on the 0-255 scale. V: speed elements whose paired ground-truth
/// volume is > 0; Vbar: the remaining speed elements.
struct EvalReport {
    double mse_total = 0.0;
    double mse_volume = 0.0;
    double mse_speed = 0.0;
    std::optional<double> mse_speed_on_V;
    std::optional<double> mse_speed_on_Vbar;
    std::size_t count_V = 0;
    std::size_t count_Vbar = 0;
    double zero_fraction = 0.0;         // share of ground-truth volume elements equal to 0
    std::optional<double> zero_recall;  // of those, share predicted 0 after quantization
};

/// Both tensors must carry the same scale; normalized inputs are rescaled by 255.
double mse_uint8(const PredictionTensor& pred, const PredictionTensor& gt);

EvalReport decompose(const PredictionTensor& pred, const PredictionTensor& gt, const ChannelPairing& pairing = {});

struct SubstitutionResult {
    PredictionTensor modified;  // u8 scale
    double mse_before = 0.0;
    double mse_after = 0.0;
};

/// Sets every speed element in V to `value` (u8 scale). Requires ground truth, so diagnostic only.
SubstitutionResult substitute_speed_constant(const PredictionTensor& pred, const PredictionTensor& gt,
                                             double value = 127.0, const ChannelPairing& pairing = {});

/// Round-half-up to integers on the 0-255 scale, as written to prediction files.
PredictionTensor quantized(const PredictionTensor& p);

struct SweepRow {
    Index stride = 0;
    std::size_t patches = 0;
    double mse = 0.0;  // mean over samples, u8 scale, quantized predictions
};

/// Tiles, predicts, stitches and scores every sample per stride. Rows ordered by stride descending.
std::vector<SweepRow> stride_sweep(const Predictor& predictor, std::span<const FullRasterSample> samples,
                                   const PatchSpec& spec, std::span<const Index> strides);

void write_report(std::ostream& out, const EvalReport& report);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace t4c
