#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "t4c/patch_geometry.hpp"

namespace t4c {

struct CacheConfig {
    std::size_t m = 10;  // files per refresh
    std::size_t k = 10;  // patches per file
    std::size_t refresh_every = 2;
    std::size_t batch_size = 8;
    std::uint64_t seed = 0;

    std::size_t epoch_size() const { return m * k; }
    void validate() const;
};

/// A day file under data/<city>/<YYYY-MM-DD>_<city>.t4cr.
struct DayFile {
    std::filesystem::path path;
    RasterMeta meta;
};

struct SampleMeta {
    std::string city;
    Date date;
    Index t0 = 0;
    Origin origin;
};

struct Sample {
    GridTensord input;   // in_planes x side x side
    GridTensord target;  // out_planes x d x d
    SampleMeta meta;
};

/// Full-raster evaluation sample: the input hour and the ground-truth future frames.
struct FullRasterSample {
    RasterMovie window;       // in_slots x H x W x C
    PredictionTensor truth;   // u8 scale
    SampleMeta meta;
};

struct SlotRequest {
    int weekday = 0;
    Index slot = 0;  // first input slot t0
};

std::vector<std::string> list_cities(const std::filesystem::path& data_dir);
/// Day files of one city sorted by date.
std::vector<DayFile> list_day_files(const std::filesystem::path& data_dir, const std::string& city);

std::vector<Sample> build_cache(std::span<const DayFile> files, const PatchSpec& spec, const CacheConfig& cfg, Rng& rng);

/// Index batches covering the cache once in an epoch-specific shuffled order.
std::vector<std::vector<std::size_t>> epoch_iter(std::size_t cache_size, std::size_t batch_size,
                                                 std::size_t epoch_index, std::uint64_t seed);

bool needs_refresh(std::size_t epoch_index, const CacheConfig& cfg);

/// n_files x k samples from held-out cities; rejects any city also used for training.
std::vector<Sample> build_validation(std::span<const DayFile> city_files, std::span<const std::string> train_cities,
                                     std::size_t n_files, std::size_t k, const PatchSpec& spec, Rng& rng);

/// For each requested (weekday, slot), a random source day with that weekday supplies the sample.
std::vector<FullRasterSample> match_metadata_sample(std::span<const SlotRequest> targets,
                                                    std::span<const DayFile> source_files, const PatchSpec& spec,
                                                    Rng& rng);

/// Training data that rebuilds its cache on refresh epochs.
class SamplePipeline {
public:
    SamplePipeline(std::vector<DayFile> files, PatchSpec spec, CacheConfig cfg);

    /// Cache for the given epoch; epochs must be requested in nondecreasing order.
    const std::vector<Sample>& cache_for_epoch(std::size_t epoch);

    const PatchSpec& spec() const { return spec_; }
    const CacheConfig& config() const { return cfg_; }
    std::size_t refreshes() const { return refreshes_; }

private:
    std::vector<DayFile> files_;
    PatchSpec spec_;
    CacheConfig cfg_;
    Rng rng_;
    std::vector<Sample> cache_;
    bool built_ = false;
    std::size_t last_epoch_ = 0;
    std::size_t refreshes_ = 0;
};

}  // namespace t4c
