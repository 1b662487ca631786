#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "t4c/patch_geometry.hpp"

namespace t4c {

/// Per-(weekday, slot, cell, channel) mean of training days on the u8 scale.
/// Stored as integer sums plus a per-weekday file count.
class AvgTable {
public:
    AvgTable() = default;
    AvgTable(std::uint32_t t_slots, std::uint32_t height, std::uint32_t width, std::uint32_t channels);

    void add_day(const RasterMovie& movie, int weekday);

    bool has_weekday(int weekday) const { return counts_[static_cast<std::size_t>(weekday)] > 0; }
    std::uint32_t count(int weekday) const { return counts_[static_cast<std::size_t>(weekday)]; }
    double mean(int weekday, std::uint32_t t, std::uint32_t r, std::uint32_t c, std::uint32_t ch) const;

    std::uint32_t t_slots() const { return t_slots_; }
    std::uint32_t height() const { return height_; }
    std::uint32_t width() const { return width_; }
    std::uint32_t channels() const { return channels_; }

    std::string city;
    int year = 0;

private:
    std::size_t offset(std::uint32_t t, std::uint32_t r, std::uint32_t c, std::uint32_t ch) const {
        return ((std::size_t{t} * height_ + r) * width_ + c) * channels_ + ch;
    }

    std::uint32_t t_slots_ = 0, height_ = 0, width_ = 0, channels_ = 0;
    std::array<std::uint32_t, 7> counts_{};
    std::array<std::vector<std::uint32_t>, 7> sums_;
};

/// Averages the given days per weekday. Requires at least one day; all days must share dims.
AvgTable fit_historic_average(std::span<const RasterMovie> days, std::span<const RasterMeta> metas);
AvgTable fit_historic_average(std::span<const std::filesystem::path> files);

inline constexpr double kMaxShiftRatio = 10.0;

/// Observed slots [t_hat - 12, t_hat) of a movie as a u8-scale tensor with 12 frames.
PredictionTensor observed_hour(const RasterMovie& movie, std::uint32_t t_hat);

/// Historic prediction rescaled by the ratio of the observed previous hour to its historic mean:
/// out(o) = clamp(A(t_hat + o - 1) * mean(T(prev hour)) / mean(A(prev hour)), 0, 255), per cell and
/// channel. A zero historic mean gives ratio 1; ratios are clamped to [0, 10].
PredictionTensor predict_historic_shifted(const AvgTable& table, const PredictionTensor& prev_hour,
                                          std::uint32_t t_hat, int weekday, std::span<const Index> out_offsets);

}  // namespace t4c
