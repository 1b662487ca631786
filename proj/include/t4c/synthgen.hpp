#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "t4c/raster_io.hpp"

namespace t4c {

enum class RoadAxis : std::uint8_t { None = 0, Horizontal = 1, Vertical = 2 };

/// Static street layout of a synthetic city. Per-cell vectors are row-major.
struct CityTemplate {
    std::string name = "synth";
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> road_mask;   // 1 = road cell
    std::vector<std::uint8_t> free_flow;   // u8-scale free-flow speed on road cells
    std::vector<RoadAxis> axis;            // orientation of the segment owning the cell

    double density() const;
    bool is_road(std::uint32_t r, std::uint32_t c) const { return road_mask[std::size_t{r} * width + c] != 0; }
};

struct DayParams {
    double base_volume = 60.0;
    double diurnal_amplitude = 1.0;
    double noise_sigma = 0.0;
    double scale_factor = 1.0;
    Date date{std::chrono::year{2019}, std::chrono::month{1}, std::chrono::day{7}};
    std::uint32_t t_slots = kSlotsPerDay;
};

inline constexpr double kMinRoadDensity = 0.01;
inline constexpr double kMaxRoadDensity = 0.05;

/// Daily profile in [1 - amplitude, 1]; amplitude 1 gives 0.5 + 0.5 sin(2 pi (t - 96) / 288).
double diurnal(double t, double amplitude);

CityTemplate gen_city(std::uint64_t seed, std::uint32_t height, std::uint32_t width, std::string name = "synth");

/// Unclamped, unrounded volume on a road heading at slot t before noise.
double volume_profile(const DayParams& params, std::uint32_t t);

std::pair<RasterMovie, RasterMeta> gen_day(const CityTemplate& city, const DayParams& params);

}  // namespace t4c
