#include "t4c/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace t4c {

namespace {

constexpr char kMagic[4] = {'T', '4', 'C', 'K'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 1 + 4 + 8;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <typename T>
T get_le(const std::uint8_t* p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
    return v;
}

}  // namespace

void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes(std::begin(kMagic), std::end(kMagic));
    bytes.push_back(kVersion);
    put_le<std::uint32_t>(bytes, ckpt.epoch);
    put_le<std::uint64_t>(bytes, static_cast<std::uint64_t>(ckpt.params.size()));
    for (double v : ckpt.params) put_le<std::uint64_t>(bytes, std::bit_cast<std::uint64_t>(v));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw Error(ErrorCode::Format, "bad magic in " + path.string() + ", expected T4CK");
    }
    if (bytes.size() < kHeaderBytes) throw Error(ErrorCode::Length, "truncated header in " + path.string());
    if (bytes[4] != kVersion) {
        throw Error(ErrorCode::UnsupportedVersion, "version " + std::to_string(bytes[4]) + " in " + path.string());
    }
    Checkpoint ckpt;
    ckpt.epoch = get_le<std::uint32_t>(bytes.data() + 5);
    const auto count = get_le<std::uint64_t>(bytes.data() + 9);
    if ((bytes.size() - kHeaderBytes) % 8 != 0 || (bytes.size() - kHeaderBytes) / 8 != count) {
        throw Error(ErrorCode::Length, "payload of " + path.string() + " does not hold " + std::to_string(count) +
                                           " parameters");
    }
    ckpt.params.resize(static_cast<Index>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        ckpt.params[static_cast<Index>(i)] = std::bit_cast<double>(get_le<std::uint64_t>(bytes.data() + kHeaderBytes + 8 * i));
    }
    return ckpt;
}

Checkpoint average_checkpoints(std::span<const Checkpoint> checkpoints) {
    if (checkpoints.empty()) throw Error(ErrorCode::Empty, "no checkpoints to average");
    Checkpoint avg{checkpoints.back().epoch, checkpoints.front().params};
    // Incremental mean: identical snapshots leave the running value untouched.
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
        const auto& p = checkpoints[i].params;
        if (p.size() != avg.params.size()) throw Error(ErrorCode::Shape, "checkpoint parameter counts differ");
        avg.params += (p - avg.params) / static_cast<double>(i + 1);
    }
    return avg;
}

}  // namespace t4c
