#include "t4c/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "t4c/rng.hpp"

namespace t4c {

namespace {

constexpr double kTargetDensity = 0.03;
constexpr int kMaxSegments = 100000;

// Volume channel of each heading is 2 * heading, speed is 2 * heading + 1.
// Horizontal roads carry headings NE/SW, vertical roads SE/NW.
constexpr std::uint32_t kHorizontalHeadings[2] = {0, 2};
constexpr std::uint32_t kVerticalHeadings[2] = {1, 3};

double round_half_up(double x) { return std::floor(x + 0.5); }

std::uint8_t clamp_u8(double x) { return static_cast<std::uint8_t>(std::clamp(round_half_up(x), 0.0, 255.0)); }

}  // namespace

double CityTemplate::density() const {
    if (road_mask.empty()) return 0.0;
    const auto roads = std::count(road_mask.begin(), road_mask.end(), std::uint8_t{1});
    return static_cast<double>(roads) / static_cast<double>(road_mask.size());
}

double diurnal(double t, double amplitude) {
    const double profile = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * (t - 96.0) / 288.0);
    return (1.0 - amplitude) + amplitude * profile;
}

CityTemplate gen_city(std::uint64_t seed, std::uint32_t height, std::uint32_t width, std::string name) {
    if (height < 16 || width < 16) {
        throw Error(ErrorCode::Generation, "city grid must be at least 16 x 16 to meet the road density target");
    }
    CityTemplate city;
    city.name = std::move(name);
    city.height = height;
    city.width = width;
    city.seed = seed;
    const std::size_t cells = std::size_t{height} * width;
    city.road_mask.assign(cells, 0);
    city.free_flow.assign(cells, 0);
    city.axis.assign(cells, RoadAxis::None);

    const auto min_roads = static_cast<std::size_t>(std::ceil(kMinRoadDensity * cells));
    const auto max_roads = static_cast<std::size_t>(std::floor(kMaxRoadDensity * cells));
    const auto target = std::clamp(static_cast<std::size_t>(std::llround(kTargetDensity * cells)), min_roads, max_roads);

    Rng rng(derive_seed(seed, {0x63697479ULL}));
    std::size_t roads = 0;
    for (int segment = 0; segment < kMaxSegments && roads < target; ++segment) {
        const bool horizontal = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        const std::uint32_t along = horizontal ? width : height;
        const std::uint32_t across = horizontal ? height : width;
        const auto lane = std::uniform_int_distribution<std::uint32_t>(0, across - 1)(rng);
        const auto length = std::uniform_int_distribution<std::uint32_t>(along / 4, along)(rng);
        const auto start = std::uniform_int_distribution<std::uint32_t>(0, along - length)(rng);
        const auto speed = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(80, 220)(rng));
        for (std::uint32_t i = start; i < start + length && roads < max_roads; ++i) {
            const std::size_t idx = horizontal ? std::size_t{lane} * width + i : std::size_t{i} * width + lane;
            if (city.road_mask[idx]) continue;
            city.road_mask[idx] = 1;
            city.free_flow[idx] = speed;
            city.axis[idx] = horizontal ? RoadAxis::Horizontal : RoadAxis::Vertical;
            ++roads;
        }
    }
    if (roads < min_roads) throw Error(ErrorCode::Generation, "road density target unreachable");
    return city;
}

double volume_profile(const DayParams& params, std::uint32_t t) {
    return params.scale_factor * params.base_volume * diurnal(t, params.diurnal_amplitude);
}

std::pair<RasterMovie, RasterMeta> gen_day(const CityTemplate& city, const DayParams& params) {
    if (!(params.scale_factor > 0.0)) throw Error(ErrorCode::Generation, "scale_factor must be positive");
    if (city.road_mask.size() != std::size_t{city.height} * city.width) {
        throw Error(ErrorCode::Generation, "city template is malformed");
    }
    RasterMeta meta = make_meta(city.name, params.date);
    RasterMovie movie(params.t_slots, city.height, city.width, kChannels);

    const auto day_index = static_cast<std::uint64_t>(std::chrono::sys_days(params.date).time_since_epoch().count());
    Rng rng(derive_seed(city.seed, {0x646179ULL, day_index}));
    std::normal_distribution<double> noise(0.0, params.noise_sigma > 0.0 ? params.noise_sigma : 1.0);
    const auto draw = [&]() { return params.noise_sigma > 0.0 ? noise(rng) : 0.0; };

    for (std::uint32_t t = 0; t < params.t_slots; ++t) {
        const double expected = volume_profile(params, t);
        const double congestion = 1.0 - 0.3 * diurnal(t, params.diurnal_amplitude);
        for (std::uint32_t r = 0; r < city.height; ++r) {
            for (std::uint32_t c = 0; c < city.width; ++c) {
                const std::size_t idx = std::size_t{r} * city.width + c;
                if (!city.road_mask[idx]) continue;
                const auto& headings =
                    city.axis[idx] == RoadAxis::Horizontal ? kHorizontalHeadings : kVerticalHeadings;
                for (std::uint32_t h : headings) {
                    const std::uint8_t volume = clamp_u8(expected + draw());
                    const double speed_noise = draw();
                    movie.at(t, r, c, 2 * h) = volume;
                    if (volume > 0) {
                        const double speed = city.free_flow[idx] * congestion + speed_noise;
                        movie.at(t, r, c, 2 * h + 1) = std::max<std::uint8_t>(1, clamp_u8(speed));
                    }
                }
            }
        }
    }
    return {std::move(movie), std::move(meta)};
}

}  // namespace t4c
