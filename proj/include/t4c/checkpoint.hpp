#pragma once

#include <cstdint>
#include <filesystem>
#include <span>

#include "t4c/linear_model.hpp"

namespace t4c {

struct Checkpoint {
    std::uint32_t epoch = 0;
    Vector<double> params;
};

/// "T4CK" | version u8 | epoch u32 | param count u64 | params as little-endian doubles.
void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Elementwise mean; n identical snapshots reproduce the snapshot bit-for-bit.
/// The result carries the epoch of the last snapshot.
Checkpoint average_checkpoints(std::span<const Checkpoint> checkpoints);

}  // namespace t4c
