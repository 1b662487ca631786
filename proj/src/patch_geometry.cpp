#include "t4c/patch_geometry.hpp"

#include <algorithm>
#include <string>

namespace t4c {

void PatchSpec::validate() const {
    if (d < 1) throw Error(ErrorCode::Config, "patch side d must be >= 1");
    if (pad < 0) throw Error(ErrorCode::Config, "pad must be >= 0");
    if (in_slots < 1) throw Error(ErrorCode::Config, "in_slots must be >= 1");
    if (channels < 1) throw Error(ErrorCode::Config, "channels must be >= 1");
    if (out_offsets.empty()) throw Error(ErrorCode::Config, "out_offsets must not be empty");
    for (std::size_t i = 0; i < out_offsets.size(); ++i) {
        if (out_offsets[i] < 1 || (i > 0 && out_offsets[i] <= out_offsets[i - 1])) {
            throw Error(ErrorCode::Config, "out_offsets must be positive and strictly increasing");
        }
    }
    if (out_offsets.back() > 12) throw Error(ErrorCode::Config, "out_offsets must not exceed 12 slots");
}

std::vector<Origin> TileGrid::origins() const {
    std::vector<Origin> out;
    out.reserve(patch_count());
    for (Index r : row_starts)
        for (Index c : col_starts) out.push_back({r, c});
    return out;
}

std::vector<Index> tile_starts(Index extent, Index d, Index s) {
    if (d < 1 || d > extent) {
        throw Error(ErrorCode::Size, "patch side " + std::to_string(d) + " does not fit extent " + std::to_string(extent));
    }
    if (s < 1 || s > d) {
        throw Error(ErrorCode::Stride, "stride " + std::to_string(s) + " must lie in [1, d=" + std::to_string(d) + "]");
    }
    const Index last = extent - d;
    std::vector<Index> starts;
    starts.reserve(static_cast<std::size_t>(last / s + 2));
    for (Index p = 0; p < last; p += s) starts.push_back(p);
    starts.push_back(last);
    return starts;
}

TileGrid tile_grid(Index height, Index width, Index d, Index s) {
    return TileGrid{tile_starts(height, d, s), tile_starts(width, d, s), d, height, width};
}

CoverageMap coverage_map(Index height, Index width, const TileGrid& grid) {
    if (grid.height != height || grid.width != width) throw Error(ErrorCode::Shape, "tile grid extent mismatch");
    // The grid is a Cartesian product, so coverage factors into row and column counts.
    const auto axis_counts = [&](const std::vector<Index>& starts, Index extent) {
        Eigen::VectorXi counts = Eigen::VectorXi::Zero(extent);
        for (Index s : starts) counts.segment(s, grid.d).array() += 1;
        return counts;
    };
    return axis_counts(grid.row_starts, height) * axis_counts(grid.col_starts, width).transpose();
}

Origin sample_patch_origin(Rng& rng, Index height, Index width, Index d) {
    if (d < 1 || d > height || d > width) throw Error(ErrorCode::Size, "patch does not fit raster");
    std::uniform_int_distribution<Index> rows(0, height - d);
    std::uniform_int_distribution<Index> cols(0, width - d);
    const Index r = rows(rng);
    return {r, cols(rng)};
}

namespace {

void check_patch_bounds(const RasterMovie& movie, Index t0, Index slots_needed, Origin origin, const PatchSpec& spec) {
    if (t0 < 0 || t0 + slots_needed > Index{movie.t_slots}) {
        throw Error(ErrorCode::Bounds, "slot window starting at " + std::to_string(t0) + " exceeds " +
                                           std::to_string(movie.t_slots) + " slots");
    }
    if (origin.row < 0 || origin.col < 0 || origin.row + spec.d > Index{movie.height} ||
        origin.col + spec.d > Index{movie.width}) {
        throw Error(ErrorCode::Bounds, "patch origin (" + std::to_string(origin.row) + "," +
                                           std::to_string(origin.col) + ") exceeds raster");
    }
    if (Index{movie.channels} != spec.channels) throw Error(ErrorCode::Shape, "channel count mismatch");
}

}  // namespace

GridTensord extract_input(const RasterMovie& movie, Index t0, Origin origin, const PatchSpec& spec) {
    check_patch_bounds(movie, t0, spec.in_slots, origin, spec);
    GridTensord out(spec.in_planes(), spec.side(), spec.side());
    const Index ch_count = spec.channels;
    for (Index slot = 0; slot < spec.in_slots; ++slot) {
        for (Index r = 0; r < spec.d; ++r) {
            for (Index c = 0; c < spec.d; ++c) {
                const std::uint8_t* px = &movie.data[movie.offset(static_cast<std::uint32_t>(t0 + slot),
                                                                  static_cast<std::uint32_t>(origin.row + r),
                                                                  static_cast<std::uint32_t>(origin.col + c), 0)];
                const Index cell = (r + spec.pad) * out.width + (c + spec.pad);
                for (Index ch = 0; ch < ch_count; ++ch) out.values(slot * ch_count + ch, cell) = normalize(px[ch]);
            }
        }
    }
    return out;
}

GridTensord extract_target(const RasterMovie& movie, Index t0, Origin origin, const PatchSpec& spec) {
    check_patch_bounds(movie, t0, spec.span(), origin, spec);
    GridTensord out(spec.out_planes(), spec.d, spec.d);
    const Index ch_count = spec.channels;
    for (Index f = 0; f < spec.out_frames(); ++f) {
        const auto t = static_cast<std::uint32_t>(t0 + spec.in_slots - 1 + spec.out_offsets[static_cast<std::size_t>(f)]);
        for (Index r = 0; r < spec.d; ++r) {
            for (Index c = 0; c < spec.d; ++c) {
                const std::uint8_t* px = &movie.data[movie.offset(t, static_cast<std::uint32_t>(origin.row + r),
                                                                  static_cast<std::uint32_t>(origin.col + c), 0)];
                for (Index ch = 0; ch < ch_count; ++ch) out.values(f * ch_count + ch, r * spec.d + c) = normalize(px[ch]);
            }
        }
    }
    return out;
}

RasterMovie extract_window(const RasterMovie& movie, Index t0, const PatchSpec& spec) {
    if (t0 < 0 || t0 + spec.in_slots > Index{movie.t_slots}) throw Error(ErrorCode::Bounds, "input window exceeds movie");
    RasterMovie out(static_cast<std::uint32_t>(spec.in_slots), movie.height, movie.width, movie.channels);
    const auto begin = movie.data.begin() + static_cast<std::ptrdiff_t>(movie.offset(static_cast<std::uint32_t>(t0), 0, 0, 0));
    std::copy(begin, begin + static_cast<std::ptrdiff_t>(out.data.size()), out.data.begin());
    return out;
}

PredictionTensor extract_future(const RasterMovie& movie, Index t0, const PatchSpec& spec) {
    if (t0 < 0 || t0 + spec.span() > Index{movie.t_slots}) throw Error(ErrorCode::Bounds, "target frames exceed movie");
    PredictionTensor out(static_cast<std::uint32_t>(spec.out_frames()), movie.height, movie.width, movie.channels,
                         Scale::Uint8);
    for (Index f = 0; f < spec.out_frames(); ++f) {
        const auto t = static_cast<std::uint32_t>(t0 + spec.in_slots - 1 + spec.out_offsets[static_cast<std::size_t>(f)]);
        for (std::uint32_t r = 0; r < movie.height; ++r)
            for (std::uint32_t c = 0; c < movie.width; ++c)
                for (std::uint32_t ch = 0; ch < movie.channels; ++ch) out.at(f, r, c, ch) = movie.at(t, r, c, ch);
    }
    return out;
}

}  // namespace t4c
