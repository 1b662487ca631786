#pragma once

#include <cmath>
#include <cstdint>

#include "t4c/linear_model.hpp"

namespace t4c {

template <typename Scalar>
struct AdamState {
    std::uint64_t step = 0;
    Vector<Scalar> m;
    Vector<Scalar> v;
    Scalar lr = Scalar(1e-3);
    Scalar beta1 = Scalar(0.9);
    Scalar beta2 = Scalar(0.999);
    Scalar eps = Scalar(1e-8);

    static AdamState zeros(Index n) {
        AdamState s;
        s.m = Vector<Scalar>::Zero(n);
        s.v = Vector<Scalar>::Zero(n);
        return s;
    }
};

/// One bias-corrected Adam update of `params` in place.
template <typename Scalar>
void adam_step(AdamState<Scalar>& state, Vector<Scalar>& params, const Vector<Scalar>& grads) {
    if (params.size() != grads.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
        throw Error(ErrorCode::Shape, "adam parameter/gradient/state sizes differ");
    }
    ++state.step;
    const auto t = static_cast<Scalar>(state.step);
    state.m = state.beta1 * state.m + (Scalar(1) - state.beta1) * grads;
    state.v = state.beta2 * state.v + (Scalar(1) - state.beta2) * grads.cwiseAbs2();
    const Scalar c1 = Scalar(1) - std::pow(state.beta1, t);
    const Scalar c2 = Scalar(1) - std::pow(state.beta2, t);
    params.array() -= state.lr * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + state.eps);
}

}  // namespace t4c
