#pragma once

#include <vector>

#include "t4c/adam.hpp"
#include "t4c/checkpoint.hpp"
#include "t4c/dataset_cache.hpp"

namespace t4c {

struct TrainConfig {
    std::size_t epochs = 30;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    LossKind loss = LossKind::Mse;
    std::size_t avg_last = 20;  // checkpoints averaged into the final model
};

struct BatchLoss {
    std::size_t epoch = 0;
    std::size_t batch = 0;
    double loss = 0.0;  // normalized scale
};

struct EpochValidation {
    std::size_t epoch = 0;
    double mse_normalized = 0.0;
    double mse_u8 = 0.0;  // normalized MSE x 255^2
};

struct TrainResult {
    std::vector<Checkpoint> checkpoints;  // one per epoch
    std::vector<BatchLoss> train_curve;
    std::vector<EpochValidation> validation_curve;
    LinearModeld final_model;  // average of the last avg_last checkpoints, or the initial model
};

/// Stacks the center d x d cells of each sample's input and its target side by side.
std::pair<Planes<double>, Planes<double>> stack_batch(std::span<const Sample> cache, std::span<const std::size_t> indices,
                                                      Index pad);

/// Normalized MSE of the model over the center cells of the samples.
double validation_mse(const LinearModeld& model, std::span<const Sample> samples, Index pad);

/// Adam over cached batches; validates and snapshots parameters after every epoch.
TrainResult train(LinearModeld model, SamplePipeline& pipeline, std::span<const Sample> validation,
                  const TrainConfig& cfg);

}  // namespace t4c
