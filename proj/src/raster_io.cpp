#include "t4c/raster_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <span>

namespace t4c {

namespace {

constexpr std::uint8_t kFormatVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 1 + 4 * 4;

struct Header {
    std::array<char, 4> magic{};
    std::uint8_t version = 0;
    std::array<std::uint32_t, 4> dims{};  // T, H, W, C
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
           (std::uint32_t{p[3]} << 24);
}

std::vector<std::uint8_t> encode_header(std::string_view magic, std::uint32_t t, std::uint32_t h,
                                        std::uint32_t w, std::uint32_t c) {
    std::vector<std::uint8_t> out(magic.begin(), magic.end());
    out.push_back(kFormatVersion);
    for (auto v : {t, h, w, c}) put_u32(out, v);
    return out;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const std::filesystem::path& path, const std::vector<std::uint8_t>& header,
          const std::uint8_t* payload, std::size_t n) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
    if (n > 0) out.write(reinterpret_cast<const char*>(payload), static_cast<std::streamsize>(n));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

// Validates magic, version and payload length given the leading bytes and the total file size.
Header decode(std::span<const std::uint8_t> head, std::size_t file_size, std::string_view magic,
              const std::filesystem::path& path) {
    if (head.size() < 4 || !std::equal(magic.begin(), magic.end(), head.begin())) {
        throw Error(ErrorCode::Format, "bad magic in " + path.string() + ", expected " + std::string(magic));
    }
    if (head.size() < kHeaderBytes) throw Error(ErrorCode::Length, "truncated header in " + path.string());
    Header h;
    std::copy_n(head.begin(), 4, h.magic.begin());
    h.version = head[4];
    if (h.version != kFormatVersion) {
        throw Error(ErrorCode::UnsupportedVersion, "version " + std::to_string(h.version) + " in " + path.string());
    }
    for (std::size_t i = 0; i < 4; ++i) h.dims[i] = get_u32(head.data() + 5 + 4 * i);
    const auto expected = RasterMovie::element_count(h.dims[0], h.dims[1], h.dims[2], h.dims[3]);
    if (file_size - kHeaderBytes != expected) {
        throw Error(ErrorCode::Length, "payload of " + path.string() + " has " +
                                           std::to_string(file_size - kHeaderBytes) + " bytes, expected " +
                                           std::to_string(expected));
    }
    return h;
}

Header decode(const std::vector<std::uint8_t>& bytes, std::string_view magic, const std::filesystem::path& path) {
    return decode(std::span(bytes).first(std::min(bytes.size(), kHeaderBytes)), bytes.size(), magic, path);
}

}  // namespace

double normalize(std::uint8_t v) { return static_cast<double>(v) / 255.0; }

std::uint8_t quantize_u8_scale(double x) {
    if (!(x > 0.0)) return 0;  // also maps NaN to 0
    const double r = std::floor(x + 0.5);
    return r >= 255.0 ? std::uint8_t{255} : static_cast<std::uint8_t>(r);
}

std::uint8_t quantize(double x) { return quantize_u8_scale(std::clamp(x, 0.0, 1.0) * 255.0); }

PredictionTensor to_uint8_scale(const PredictionTensor& p) {
    if (p.scale == Scale::Uint8) return p;
    PredictionTensor out = p;
    out.grid.values *= 255.0;
    out.scale = Scale::Uint8;
    return out;
}

RasterMovie read_raster(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::error_code ec;
    const auto size = static_cast<std::size_t>(std::filesystem::file_size(path, ec));
    if (ec) throw Error(ErrorCode::Io, "cannot stat " + path.string());
    std::array<std::uint8_t, kHeaderBytes> head{};
    in.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    const auto h = decode(std::span<const std::uint8_t>(head.data(), got), size, "T4CR", path);
    RasterMovie m;
    m.t_slots = h.dims[0];
    m.height = h.dims[1];
    m.width = h.dims[2];
    m.channels = h.dims[3];
    m.data.resize(size - kHeaderBytes);
    in.read(reinterpret_cast<char*>(m.data.data()), static_cast<std::streamsize>(m.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != m.data.size()) throw Error(ErrorCode::Length, "short read of " + path.string());
    return m;
}

void write_raster(const RasterMovie& movie, const std::filesystem::path& path) {
    if (movie.data.size() != RasterMovie::element_count(movie.t_slots, movie.height, movie.width, movie.channels)) {
        throw Error(ErrorCode::Length, "movie payload does not match its dims");
    }
    dump(path, encode_header("T4CR", movie.t_slots, movie.height, movie.width, movie.channels), movie.data.data(),
         movie.data.size());
}

PredictionTensor read_prediction(const std::filesystem::path& path) {
    const auto bytes = slurp(path);
    const auto h = decode(bytes, "T4CP", path);
    PredictionTensor p(h.dims[0], h.dims[1], h.dims[2], h.dims[3], Scale::Uint8);
    const std::uint8_t* src = bytes.data() + kHeaderBytes;
    for (Index f = 0; f < p.frames; ++f)
        for (Index r = 0; r < p.height(); ++r)
            for (Index c = 0; c < p.width(); ++c)
                for (Index ch = 0; ch < p.channels; ++ch) p.at(f, r, c, ch) = *src++;
    return p;
}

void write_prediction(const PredictionTensor& pred, const std::filesystem::path& path) {
    std::vector<std::uint8_t> payload;
    payload.reserve(static_cast<std::size_t>(pred.grid.values.size()));
    const bool normalized = pred.scale == Scale::Normalized;
    for (Index f = 0; f < pred.frames; ++f)
        for (Index r = 0; r < pred.height(); ++r)
            for (Index c = 0; c < pred.width(); ++c)
                for (Index ch = 0; ch < pred.channels; ++ch) {
                    const double v = pred.at(f, r, c, ch);
                    payload.push_back(normalized ? quantize(v) : quantize_u8_scale(v));
                }
    dump(path,
         encode_header("T4CP", pred.frames, static_cast<std::uint32_t>(pred.height()),
                       static_cast<std::uint32_t>(pred.width()), pred.channels),
         payload.data(), payload.size());
}

std::string peek_magic(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::string magic(4, '\0');
    in.read(magic.data(), 4);
    magic.resize(static_cast<std::size_t>(in.gcount()));
    return magic;
}

Date parse_date(std::string_view text) {
    using namespace std::chrono;
    int y = 0;
    unsigned mo = 0, d = 0;
    const auto num = [&](std::string_view s, auto& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && p == s.data() + s.size();
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !num(text.substr(0, 4), y) ||
        !num(text.substr(5, 2), mo) || !num(text.substr(8, 2), d)) {
        throw Error(ErrorCode::Parse, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    const Date date{year{y}, month{mo}, day{d}};
    if (!date.ok()) throw Error(ErrorCode::Parse, "invalid calendar date '" + std::string(text) + "'");
    return date;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

Date add_days(const Date& d, int days) {
    return Date{std::chrono::sys_days(d) + std::chrono::days(days)};
}

int weekday_of(const Date& d) {
    if (!d.ok()) throw Error(ErrorCode::Parse, "invalid calendar date");
    return static_cast<int>(std::chrono::weekday(std::chrono::sys_days(d)).iso_encoding()) - 1;
}

RasterMeta make_meta(std::string city, const Date& d) { return RasterMeta{std::move(city), d, weekday_of(d)}; }

std::string day_filename(const RasterMeta& meta) { return format_date(meta.date) + "_" + meta.city + ".t4cr"; }

RasterMeta parse_day_filename(std::string_view filename) {
    constexpr std::string_view ext = ".t4cr";
    if (filename.size() < 10 + 1 + 1 + ext.size() || filename[10] != '_' ||
        filename.substr(filename.size() - ext.size()) != ext) {
        throw Error(ErrorCode::Parse, "expected YYYY-MM-DD_CITY.t4cr, got '" + std::string(filename) + "'");
    }
    auto city = std::string(filename.substr(11, filename.size() - 11 - ext.size()));
    return make_meta(std::move(city), parse_date(filename.substr(0, 10)));
}

}  // namespace t4c
