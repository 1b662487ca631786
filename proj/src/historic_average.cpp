#include "t4c/historic_average.hpp"

#include <algorithm>

namespace t4c {

namespace {
constexpr std::uint32_t kHourSlots = 12;
}

AvgTable::AvgTable(std::uint32_t t_slots, std::uint32_t height, std::uint32_t width, std::uint32_t channels)
    : t_slots_(t_slots), height_(height), width_(width), channels_(channels) {}

void AvgTable::add_day(const RasterMovie& movie, int weekday) {
    if (weekday < 0 || weekday > 6) throw Error(ErrorCode::Bounds, "weekday out of range");
    if (movie.t_slots != t_slots_ || movie.height != height_ || movie.width != width_ || movie.channels != channels_) {
        throw Error(ErrorCode::Shape, "day dims differ from the average table");
    }
    auto& sums = sums_[static_cast<std::size_t>(weekday)];
    if (sums.empty()) sums.assign(movie.data.size(), 0);
    std::transform(sums.begin(), sums.end(), movie.data.begin(), sums.begin(),
                   [](std::uint32_t s, std::uint8_t v) { return s + v; });
    ++counts_[static_cast<std::size_t>(weekday)];
}

double AvgTable::mean(int weekday, std::uint32_t t, std::uint32_t r, std::uint32_t c, std::uint32_t ch) const {
    const auto w = static_cast<std::size_t>(weekday);
    if (weekday < 0 || weekday > 6 || counts_[w] == 0) {
        throw Error(ErrorCode::Coverage, "average table has no data for weekday " + std::to_string(weekday));
    }
    if (t >= t_slots_) throw Error(ErrorCode::Bounds, "slot " + std::to_string(t) + " out of range");
    return static_cast<double>(sums_[w][offset(t, r, c, ch)]) / counts_[w];
}

AvgTable fit_historic_average(std::span<const RasterMovie> days, std::span<const RasterMeta> metas) {
    if (days.empty()) throw Error(ErrorCode::Coverage, "no training days for the average table");
    if (days.size() != metas.size()) throw Error(ErrorCode::Shape, "days and metadata differ in length");
    const auto& first = days.front();
    AvgTable table(first.t_slots, first.height, first.width, first.channels);
    table.city = metas.front().city;
    table.year = static_cast<int>(metas.front().date.year());
    for (std::size_t i = 0; i < days.size(); ++i) table.add_day(days[i], metas[i].weekday);
    return table;
}

AvgTable fit_historic_average(std::span<const std::filesystem::path> files) {
    if (files.empty()) throw Error(ErrorCode::Coverage, "no training days for the average table");
    AvgTable table;
    for (const auto& path : files) {
        const RasterMovie movie = read_raster(path);
        const RasterMeta meta = parse_day_filename(path.filename().string());
        if (table.t_slots() == 0) {
            table = AvgTable(movie.t_slots, movie.height, movie.width, movie.channels);
            table.city = meta.city;
            table.year = static_cast<int>(meta.date.year());
        }
        table.add_day(movie, meta.weekday);
    }
    return table;
}

PredictionTensor observed_hour(const RasterMovie& movie, std::uint32_t t_hat) {
    if (t_hat < kHourSlots || t_hat > movie.t_slots) throw Error(ErrorCode::Bounds, "observed hour exceeds movie");
    PredictionTensor out(kHourSlots, movie.height, movie.width, movie.channels, Scale::Uint8);
    for (std::uint32_t f = 0; f < kHourSlots; ++f)
        for (std::uint32_t r = 0; r < movie.height; ++r)
            for (std::uint32_t c = 0; c < movie.width; ++c)
                for (std::uint32_t ch = 0; ch < movie.channels; ++ch)
                    out.at(f, r, c, ch) = movie.at(t_hat - kHourSlots + f, r, c, ch);
    return out;
}

PredictionTensor predict_historic_shifted(const AvgTable& table, const PredictionTensor& prev_hour,
                                          std::uint32_t t_hat, int weekday, std::span<const Index> out_offsets) {
    if (prev_hour.scale != Scale::Uint8) throw Error(ErrorCode::Scale, "observed hour must be on the u8 scale");
    if (prev_hour.frames != kHourSlots || prev_hour.channels != table.channels() ||
        prev_hour.height() != table.height() || prev_hour.width() != table.width()) {
        throw Error(ErrorCode::Shape, "observed hour does not match the average table");
    }
    if (out_offsets.empty()) throw Error(ErrorCode::Config, "no output offsets");
    const Index horizon = *std::max_element(out_offsets.begin(), out_offsets.end());
    if (t_hat < kHourSlots || Index{t_hat} - 1 + horizon >= Index{table.t_slots()}) {
        throw Error(ErrorCode::Bounds, "t_hat " + std::to_string(t_hat) + " leaves no room for the observed hour or horizon");
    }
    if (!table.has_weekday(weekday)) {
        throw Error(ErrorCode::Coverage, "average table has no data for weekday " + std::to_string(weekday));
    }

    PredictionTensor out(static_cast<std::uint32_t>(out_offsets.size()), table.height(), table.width(),
                         table.channels(), Scale::Uint8);
    for (std::uint32_t r = 0; r < table.height(); ++r) {
        for (std::uint32_t c = 0; c < table.width(); ++c) {
            for (std::uint32_t ch = 0; ch < table.channels(); ++ch) {
                double observed = 0.0, historic = 0.0;
                for (std::uint32_t f = 0; f < kHourSlots; ++f) {
                    observed += prev_hour.at(f, r, c, ch);
                    historic += table.mean(weekday, t_hat - kHourSlots + f, r, c, ch);
                }
                // Both sums span 12 slots, so their ratio equals the ratio of means.
                const double ratio = historic == 0.0 ? 1.0 : std::clamp(observed / historic, 0.0, kMaxShiftRatio);
                for (std::size_t f = 0; f < out_offsets.size(); ++f) {
                    const auto t = static_cast<std::uint32_t>(Index{t_hat} - 1 + out_offsets[f]);
                    out.at(static_cast<Index>(f), r, c, ch) =
                        std::clamp(table.mean(weekday, t, r, c, ch) * ratio, 0.0, 255.0);
                }
            }
        }
    }
    return out;
}

}  // namespace t4c
