#pragma once

#include <cmath>

#include "t4c/predictor.hpp"

namespace t4c {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class LossKind { Mse, MaskedSpeed };

/// Per-cell channel map followed by a sigmoid: out(cell) = sigmoid(W x(cell) + b).
template <typename Scalar>
struct LinearModel {
    Planes<Scalar> weights;  // out_planes x in_planes
    Vector<Scalar> bias;     // out_planes

    Index in_planes() const { return weights.cols(); }
    Index out_planes() const { return weights.rows(); }
    Index param_count() const { return weights.size() + bias.size(); }

    bool finite() const { return weights.allFinite() && bias.allFinite(); }

    /// Weights (column-major) followed by bias.
    Vector<Scalar> flatten() const {
        Vector<Scalar> p(param_count());
        p.head(weights.size()) = weights.reshaped();
        p.tail(bias.size()) = bias;
        return p;
    }

    static LinearModel unflatten(const Vector<Scalar>& p, Index out_planes, Index in_planes) {
        if (p.size() != out_planes * in_planes + out_planes) {
            throw Error(ErrorCode::Shape, "parameter count " + std::to_string(p.size()) + " does not match a " +
                                              std::to_string(out_planes) + "x" + std::to_string(in_planes) + " model");
        }
        LinearModel m;
        m.weights = p.head(out_planes * in_planes).reshaped(out_planes, in_planes);
        m.bias = p.tail(out_planes);
        return m;
    }

    /// Uniform weights in +-sqrt(6 / (in + out)), zero bias.
    static LinearModel glorot(Index out_planes, Index in_planes, Rng& rng) {
        const double limit = std::sqrt(6.0 / static_cast<double>(in_planes + out_planes));
        std::uniform_real_distribution<double> dist(-limit, limit);
        LinearModel m;
        m.weights.resize(out_planes, in_planes);
        for (Index j = 0; j < in_planes; ++j)
            for (Index i = 0; i < out_planes; ++i) m.weights(i, j) = static_cast<Scalar>(dist(rng));
        m.bias = Vector<Scalar>::Zero(out_planes);
        return m;
    }
};

using LinearModeld = LinearModel<double>;

template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& z) {
    using Scalar = typename Derived::Scalar;
    return z.unaryExpr([](Scalar v) { return Scalar(1) / (Scalar(1) + std::exp(-v)); });
}

/// Applies the model to every column (cell) of a plane matrix.
template <typename Scalar>
Planes<Scalar> forward_planes(const LinearModel<Scalar>& model, const Planes<Scalar>& x) {
    if (!model.finite()) throw Error(ErrorCode::Numeric, "model parameters are not finite");
    if (x.rows() != model.in_planes()) {
        throw Error(ErrorCode::Shape, "input has " + std::to_string(x.rows()) + " planes, model expects " +
                                          std::to_string(model.in_planes()));
    }
    Planes<Scalar> z = model.weights * x;
    z.colwise() += model.bias;
    return sigmoid(z);
}

template <typename Scalar>
GridTensor<Scalar> forward_linear(const LinearModel<Scalar>& model, const GridTensor<Scalar>& input) {
    return GridTensor<Scalar>(forward_planes(model, input.values), input.height, input.width);
}

/// 1 where an element contributes to the masked loss: volume planes always, speed planes
/// where the paired ground-truth volume (the preceding plane) is nonzero.
template <typename Scalar>
Planes<Scalar> speed_mask(const Planes<Scalar>& volume_gt, Index channels) {
    Planes<Scalar> mask(volume_gt.rows(), volume_gt.cols());
    for (Index p = 0; p < volume_gt.rows(); ++p) {
        if ((p % channels) % 2 == 0) {
            mask.row(p).setOnes();
        } else {
            mask.row(p) = (volume_gt.row(p - 1).array() > Scalar(0)).template cast<Scalar>();
        }
    }
    return mask;
}

template <typename Scalar>
Scalar loss_mse(const Planes<Scalar>& pred, const Planes<Scalar>& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols()) throw Error(ErrorCode::Shape, "loss shape mismatch");
    if (pred.size() == 0) throw Error(ErrorCode::DegenerateLoss, "empty loss input");
    return (pred - target).squaredNorm() / static_cast<Scalar>(pred.size());
}

template <typename Scalar>
Scalar loss_masked_speed(const Planes<Scalar>& pred, const Planes<Scalar>& target, const Planes<Scalar>& volume_gt,
                         Index channels = kChannels) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols() || volume_gt.rows() != target.rows() ||
        volume_gt.cols() != target.cols()) {
        throw Error(ErrorCode::Shape, "loss shape mismatch");
    }
    const Planes<Scalar> mask = speed_mask(volume_gt, channels);
    const Scalar active = mask.sum();
    if (active == Scalar(0)) throw Error(ErrorCode::DegenerateLoss, "no element contributes to the masked loss");
    return (mask.array() * (pred - target).array().square()).sum() / active;
}

template <typename Scalar>
struct LinearGradients {
    Scalar loss{};
    Planes<Scalar> weights;
    Vector<Scalar> bias;

    Vector<Scalar> flatten() const {
        Vector<Scalar> p(weights.size() + bias.size());
        p.head(weights.size()) = weights.reshaped();
        p.tail(bias.size()) = bias;
        return p;
    }
};

/// Exact gradients of the selected loss over all cells (columns) of x. For the masked
/// loss the ground-truth volumes are taken from `target`.
template <typename Scalar>
LinearGradients<Scalar> backward_linear(const LinearModel<Scalar>& model, const Planes<Scalar>& x,
                                        const Planes<Scalar>& target, LossKind kind, Index channels = kChannels) {
    const Planes<Scalar> s = forward_planes(model, x);
    if (s.rows() != target.rows() || s.cols() != target.cols()) throw Error(ErrorCode::Shape, "target shape mismatch");

    Planes<Scalar> delta = (s - target).cwiseProduct(s.cwiseProduct((Scalar(1) - s.array()).matrix()));
    LinearGradients<Scalar> g;
    if (kind == LossKind::Mse) {
        g.loss = loss_mse(s, target);
        delta *= Scalar(2) / static_cast<Scalar>(s.size());
    } else {
        const Planes<Scalar> mask = speed_mask(target, channels);
        const Scalar active = mask.sum();
        if (active == Scalar(0)) throw Error(ErrorCode::DegenerateLoss, "no element contributes to the masked loss");
        g.loss = (mask.array() * (s - target).array().square()).sum() / active;
        delta = delta.cwiseProduct(mask) * (Scalar(2) / active);
    }
    g.weights = delta * x.transpose();
    g.bias = delta.rowwise().sum();
    return g;
}

template <typename Scalar>
Scalar evaluate_loss(const LinearModel<Scalar>& model, const Planes<Scalar>& x, const Planes<Scalar>& target,
                     LossKind kind, Index channels = kChannels) {
    const Planes<Scalar> s = forward_planes(model, x);
    return kind == LossKind::Mse ? loss_mse(s, target) : loss_masked_speed(s, target, target, channels);
}

/// Predictor adapter for the linear learner.
class LinearPredictor final : public Predictor {
public:
    explicit LinearPredictor(LinearModeld model) : model_(std::move(model)) {}
    GridTensord predict(const GridTensord& input) const override { return forward_linear(model_, input); }
    const LinearModeld& model() const { return model_; }

private:
    LinearModeld model_;
};

}  // namespace t4c
