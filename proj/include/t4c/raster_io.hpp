#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "t4c/grid_tensor.hpp"

namespace t4c {

inline constexpr std::uint32_t kSlotsPerDay = 288;
inline constexpr std::uint32_t kChannels = 8;

/// One day of traffic for one city: u8 values indexed (t, r, c, ch), ch fastest.
struct RasterMovie {
    std::uint32_t t_slots = 0;
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint32_t channels = 0;
    std::vector<std::uint8_t> data;

    RasterMovie() = default;
    RasterMovie(std::uint32_t t, std::uint32_t h, std::uint32_t w, std::uint32_t c)
        : t_slots(t), height(h), width(w), channels(c), data(element_count(t, h, w, c), 0) {}

    static std::size_t element_count(std::uint32_t t, std::uint32_t h, std::uint32_t w, std::uint32_t c) {
        return std::size_t{t} * h * w * c;
    }

    std::size_t offset(std::uint32_t t, std::uint32_t r, std::uint32_t c, std::uint32_t ch) const {
        return ((std::size_t{t} * height + r) * width + c) * channels + ch;
    }
    std::uint8_t& at(std::uint32_t t, std::uint32_t r, std::uint32_t c, std::uint32_t ch) {
        return data[offset(t, r, c, ch)];
    }
    std::uint8_t at(std::uint32_t t, std::uint32_t r, std::uint32_t c, std::uint32_t ch) const {
        return data[offset(t, r, c, ch)];
    }

    bool operator==(const RasterMovie&) const = default;
};

using Date = std::chrono::year_month_day;

struct RasterMeta {
    std::string city;
    Date date;
    int weekday = 0;  // 0 = Monday
};

enum class Scale { Normalized, Uint8 };

/// Predicted or ground-truth future frames over a full raster.
/// Planes are folded frame-major: plane index f * channels + ch.
struct PredictionTensor {
    std::uint32_t frames = 0;
    std::uint32_t channels = 0;
    Scale scale = Scale::Normalized;
    GridTensord grid;

    PredictionTensor() = default;
    PredictionTensor(std::uint32_t f, Index h, Index w, std::uint32_t c, Scale s)
        : frames(f), channels(c), scale(s), grid(Index{f} * c, h, w) {}

    Index height() const { return grid.height; }
    Index width() const { return grid.width; }
    double& at(Index f, Index r, Index c, Index ch) { return grid(f * channels + ch, r, c); }
    double at(Index f, Index r, Index c, Index ch) const { return grid(f * channels + ch, r, c); }

    bool same_shape(const PredictionTensor& o) const {
        return frames == o.frames && channels == o.channels && grid.same_shape(o.grid);
    }
};

/// Returns a copy on the 0-255 scale.
PredictionTensor to_uint8_scale(const PredictionTensor& p);

double normalize(std::uint8_t v);
std::uint8_t quantize(double x);
/// Round-half-up and clamp of a value already on the 0-255 scale.
std::uint8_t quantize_u8_scale(double x);

RasterMovie read_raster(const std::filesystem::path& path);
void write_raster(const RasterMovie& movie, const std::filesystem::path& path);

/// Prediction files share the raster layout with magic "T4CP" and T = frames.
/// Values are quantized on write; reading yields a Uint8-scale tensor.
PredictionTensor read_prediction(const std::filesystem::path& path);
void write_prediction(const PredictionTensor& pred, const std::filesystem::path& path);

/// Reads only the magic of a file ("T4CR", "T4CP", ...).
std::string peek_magic(const std::filesystem::path& path);

Date parse_date(std::string_view text);
std::string format_date(const Date& d);
Date add_days(const Date& d, int days);
int weekday_of(const Date& d);

RasterMeta make_meta(std::string city, const Date& d);
std::string day_filename(const RasterMeta& meta);
/// Parses "YYYY-MM-DD_CITY.t4cr".
RasterMeta parse_day_filename(std::string_view filename);

}  // namespace t4c
