#pragma once

#include <Eigen/Dense>

#include "t4c/error.hpp"

namespace t4c {

using Index = Eigen::Index;

/// Stack of 2-D planes over a height x width grid. Each column of `values`
/// holds the full plane vector of one cell (cell index r * width + c), so a
/// per-cell channel map is a single matrix product on `values`.
template <typename Scalar>
using Planes = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct GridTensor {
    Index height = 0;
    Index width = 0;
    Planes<Scalar> values;

    GridTensor() = default;
    GridTensor(Index planes, Index h, Index w)
        : height(h), width(w), values(Planes<Scalar>::Zero(planes, h * w)) {}
    GridTensor(Planes<Scalar> v, Index h, Index w) : height(h), width(w), values(std::move(v)) {
        if (values.cols() != h * w) {
            throw Error(ErrorCode::Shape, "plane matrix columns do not match grid extent");
        }
    }

    Index planes() const { return values.rows(); }
    Index cells() const { return values.cols(); }

    Scalar& operator()(Index plane, Index r, Index c) { return values(plane, r * width + c); }
    Scalar operator()(Index plane, Index r, Index c) const { return values(plane, r * width + c); }

    bool same_shape(const GridTensor& other) const {
        return height == other.height && width == other.width && planes() == other.planes();
    }
};

using GridTensord = GridTensor<double>;

/// Copies the `rows` x `cols` window starting at (row, col).
template <typename Scalar>
GridTensor<Scalar> crop(const GridTensor<Scalar>& in, Index row, Index col, Index rows, Index cols) {
    if (row < 0 || col < 0 || row + rows > in.height || col + cols > in.width) {
        throw Error(ErrorCode::Bounds, "crop window exceeds grid");
    }
    GridTensor<Scalar> out(in.planes(), rows, cols);
    for (Index r = 0; r < rows; ++r) {
        out.values.middleCols(r * cols, cols) = in.values.middleCols((row + r) * in.width + col, cols);
    }
    return out;
}

/// Drops a border of width `pad` on every side.
template <typename Scalar>
GridTensor<Scalar> crop_center(const GridTensor<Scalar>& in, Index pad) {
    return crop(in, pad, pad, in.height - 2 * pad, in.width - 2 * pad);
}

}  // namespace t4c
