#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "t4c/dataset_cache.hpp"
#include "t4c/synthgen.hpp"
#include "t4c/training.hpp"

namespace t4c::cli {

/// Every experiment parameter. Loaded from a flat JSON object; unknown keys are rejected.
struct RunConfig {
    std::uint64_t seed = 0;
    std::filesystem::path data_dir = "data";
    std::filesystem::path out_dir = "out";

    // cities
    std::vector<std::string> cities{"alpha", "beta"};
    std::string val_city = "gamma";
    std::string meta_city;  // metadata source for sweeps, defaults to the first training city

    // gen
    std::string start_date = "2019-01-07";
    std::size_t n_days = 7;
    std::uint32_t height = 99;
    std::uint32_t width = 87;
    std::uint32_t t_slots = kSlotsPerDay;
    double base_volume = 60.0;
    double diurnal_amplitude = 1.0;
    double noise_sigma = 4.0;
    double scale_factor = 1.0;

    PatchSpec spec{32, 6, 12, kChannels, {1, 2, 3, 6, 9, 12}};
    CacheConfig cache{10, 10, 2, 8, 0};
    TrainConfig train;
    std::size_t val_files = 10;
    std::size_t val_k = 10;

    // predict / sweep / eval
    std::string predictor = "linear";
    std::filesystem::path model;
    std::filesystem::path input;
    std::filesystem::path output;
    std::filesystem::path pred;
    std::filesystem::path gt;
    Index stride = 16;
    Index t0 = 130;
    std::vector<Index> strides;  // empty: 10, 20, 30, 50, 75, 100 scaled by d / 100
    std::size_t sweep_samples = 20;

    // baseline
    std::string baseline_city;  // defaults to the first training city
    int table_year = 2019;
    int test_year = 2020;
    std::vector<std::uint32_t> test_slots{130};

    void validate() const;
    std::vector<Index> sweep_strides() const;
};

/// Applies the keys of a flat JSON object on top of `cfg`.
void apply_json(RunConfig& cfg, const std::string& json_text);

RunConfig load_config(const std::filesystem::path& path);

int cmd_gen(const RunConfig& cfg, std::ostream& out);
int cmd_train(const RunConfig& cfg, std::ostream& out);
int cmd_predict(const RunConfig& cfg, std::ostream& out);
int cmd_eval(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_baseline(const RunConfig& cfg, std::ostream& out);

/// Entry point. Exit codes: 0 success, 1 runtime failure, 2 configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace t4c::cli
