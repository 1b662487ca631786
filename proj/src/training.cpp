#include "t4c/training.hpp"

#include <algorithm>
#include <cmath>

namespace t4c {

std::pair<Planes<double>, Planes<double>> stack_batch(std::span<const Sample> cache, std::span<const std::size_t> indices,
                                                      Index pad) {
    if (indices.empty()) throw Error(ErrorCode::Empty, "empty batch");
    const Sample& first = cache[indices.front()];
    const Index cells = first.target.cells();
    Planes<double> x(first.input.planes(), cells * static_cast<Index>(indices.size()));
    Planes<double> t(first.target.planes(), x.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const Sample& s = cache[indices[i]];
        const auto col = static_cast<Index>(i) * cells;
        x.middleCols(col, cells) = crop_center(s.input, pad).values;
        t.middleCols(col, cells) = s.target.values;
    }
    return {std::move(x), std::move(t)};
}

double validation_mse(const LinearModeld& model, std::span<const Sample> samples, Index pad) {
    if (samples.empty()) throw Error(ErrorCode::Empty, "empty validation set");
    double sum = 0.0;
    double count = 0.0;
    for (const Sample& s : samples) {
        const Planes<double> pred = forward_planes(model, crop_center(s.input, pad).values);
        sum += (pred - s.target.values).squaredNorm();
        count += static_cast<double>(pred.size());
    }
    return sum / count;
}

TrainResult train(LinearModeld model, SamplePipeline& pipeline, std::span<const Sample> validation,
                  const TrainConfig& cfg) {
    const Index out_planes = model.out_planes(), in_planes = model.in_planes();
    const Index pad = pipeline.spec().pad;
    const auto& cache_cfg = pipeline.config();

    TrainResult result;
    Vector<double> params = model.flatten();
    AdamState<double> adam = AdamState<double>::zeros(params.size());
    adam.lr = cfg.lr;
    adam.beta1 = cfg.beta1;
    adam.beta2 = cfg.beta2;
    adam.eps = cfg.eps;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto& cache = pipeline.cache_for_epoch(epoch);
        const auto batches = epoch_iter(cache.size(), cache_cfg.batch_size, epoch, cache_cfg.seed);
        for (std::size_t b = 0; b < batches.size(); ++b) {
            const auto [x, t] = stack_batch(cache, batches[b], pad);
            const auto grads = backward_linear(model, x, t, cfg.loss, pipeline.spec().channels);
            if (!std::isfinite(grads.loss) || !grads.weights.allFinite() || !grads.bias.allFinite()) {
                throw Error(ErrorCode::Divergence,
                            "non-finite loss at epoch " + std::to_string(epoch) + ", batch " + std::to_string(b));
            }
            result.train_curve.push_back({epoch, b, grads.loss});
            adam_step(adam, params, grads.flatten());
            model = LinearModeld::unflatten(params, out_planes, in_planes);
        }
        if (!validation.empty()) {
            const double mse = validation_mse(model, validation, pad);
            result.validation_curve.push_back({epoch, mse, mse * 255.0 * 255.0});
        }
        result.checkpoints.push_back({static_cast<std::uint32_t>(epoch), params});
    }

    if (result.checkpoints.empty()) {
        result.final_model = std::move(model);
    } else {
        const std::size_t n = std::min(std::max<std::size_t>(cfg.avg_last, 1), result.checkpoints.size());
        const auto tail = std::span<const Checkpoint>(result.checkpoints).last(n);
        result.final_model = LinearModeld::unflatten(average_checkpoints(tail).params, out_planes, in_planes);
    }
    return result;
}

}  // namespace t4c
