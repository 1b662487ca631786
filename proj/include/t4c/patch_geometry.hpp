#pragma once

#include <cstdint>
#include <vector>

#include "t4c/grid_tensor.hpp"
#include "t4c/raster_io.hpp"
#include "t4c/rng.hpp"

namespace t4c {

struct PatchSpec {
    Index d = 100;
    Index pad = 6;
    Index in_slots = 12;
    Index channels = kChannels;
    std::vector<Index> out_offsets{1, 2, 3, 6, 9, 12};

    void validate() const;

    Index side() const { return d + 2 * pad; }
    Index out_frames() const { return static_cast<Index>(out_offsets.size()); }
    Index in_planes() const { return in_slots * channels; }
    Index out_planes() const { return out_frames() * channels; }
    Index horizon() const { return out_offsets.empty() ? 0 : out_offsets.back(); }
    /// Slots a movie needs beyond t0 to yield input and target.
    Index span() const { return in_slots + horizon(); }
};

struct Origin {
    Index row = 0;
    Index col = 0;
    bool operator==(const Origin&) const = default;
};

struct TileGrid {
    std::vector<Index> row_starts;
    std::vector<Index> col_starts;
    Index d = 0;
    Index height = 0;
    Index width = 0;

    std::size_t patch_count() const { return row_starts.size() * col_starts.size(); }
    /// Row-major over (row_start, col_start).
    std::vector<Origin> origins() const;
};

using CoverageMap = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Deduplicated min(i * s, extent - d) for i = 0, 1, ...
std::vector<Index> tile_starts(Index extent, Index d, Index s);

TileGrid tile_grid(Index height, Index width, Index d, Index s);

CoverageMap coverage_map(Index height, Index width, const TileGrid& grid);

Origin sample_patch_origin(Rng& rng, Index height, Index width, Index d);

/// 96 x (d + 2 pad) x (d + 2 pad) for the default spec: slots [t0, t0 + in_slots)
/// folded slot-major into planes, normalized, zero border of width pad.
GridTensord extract_input(const RasterMovie& movie, Index t0, Origin origin, const PatchSpec& spec);

/// Frames at t0 + in_slots - 1 + offset, normalized, folded frame-major into d x d planes.
GridTensord extract_target(const RasterMovie& movie, Index t0, Origin origin, const PatchSpec& spec);

/// Copies slots [t0, t0 + in_slots) of the full raster.
RasterMovie extract_window(const RasterMovie& movie, Index t0, const PatchSpec& spec);

/// Ground-truth frames of the full raster on the 0-255 scale.
PredictionTensor extract_future(const RasterMovie& movie, Index t0, const PatchSpec& spec);

}  // namespace t4c
