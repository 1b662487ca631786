#include "t4c/dataset_cache.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace t4c {

void CacheConfig::validate() const {
    if (m < 1) throw Error(ErrorCode::Config, "m must be >= 1");
    if (k < 1) throw Error(ErrorCode::Config, "k must be >= 1");
    if (refresh_every < 1) throw Error(ErrorCode::Config, "refresh_every must be >= 1");
    if (batch_size < 1) throw Error(ErrorCode::Config, "batch_size must be >= 1");
}

std::vector<std::string> list_cities(const std::filesystem::path& data_dir) {
    std::vector<std::string> cities;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir, ec)) {
        if (entry.is_directory()) cities.push_back(entry.path().filename().string());
    }
    if (ec) throw Error(ErrorCode::Io, "cannot list " + data_dir.string() + ": " + ec.message());
    std::sort(cities.begin(), cities.end());
    return cities;
}

std::vector<DayFile> list_day_files(const std::filesystem::path& data_dir, const std::string& city) {
    const auto dir = data_dir / city;
    std::vector<DayFile> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".t4cr") continue;
        RasterMeta meta = parse_day_filename(entry.path().filename().string());
        if (meta.city != city) continue;
        files.push_back({entry.path(), std::move(meta)});
    }
    if (ec) throw Error(ErrorCode::Io, "cannot list " + dir.string() + ": " + ec.message());
    std::sort(files.begin(), files.end(), [](const DayFile& a, const DayFile& b) { return a.meta.date < b.meta.date; });
    return files;
}

namespace {

RasterMovie load_day(const DayFile& file, const PatchSpec& spec) {
    RasterMovie movie;
    try {
        movie = read_raster(file.path);
    } catch (const Error& e) {
        throw Error(ErrorCode::Load, "cannot load " + file.path.string() + ": " + e.what());
    }
    if (Index{movie.t_slots} < spec.span()) {
        throw Error(ErrorCode::Bounds, file.path.string() + " has " + std::to_string(movie.t_slots) + " slots, need " +
                                           std::to_string(spec.span()));
    }
    if (Index{movie.height} < spec.d || Index{movie.width} < spec.d) {
        throw Error(ErrorCode::Size, file.path.string() + " is smaller than the patch side");
    }
    return movie;
}

// m indices into n files: without replacement when possible.
std::vector<std::size_t> choose_files(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<std::size_t> chosen;
    if (n >= m) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(all[i], all[pick(rng)]);
        }
        chosen.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t i = 0; i < m; ++i) chosen.push_back(pick(rng));
    }
    return chosen;
}

void sample_file(const DayFile& file, const RasterMovie& movie, const PatchSpec& spec, std::size_t k, Rng& rng,
                 std::vector<Sample>& out) {
    std::uniform_int_distribution<Index> slot(0, Index{movie.t_slots} - spec.span());
    for (std::size_t j = 0; j < k; ++j) {
        const Index t0 = slot(rng);
        const Origin origin = sample_patch_origin(rng, movie.height, movie.width, spec.d);
        out.push_back({extract_input(movie, t0, origin, spec), extract_target(movie, t0, origin, spec),
                       SampleMeta{file.meta.city, file.meta.date, t0, origin}});
    }
}

}  // namespace

std::vector<Sample> build_cache(std::span<const DayFile> files, const PatchSpec& spec, const CacheConfig& cfg, Rng& rng) {
    spec.validate();
    cfg.validate();
    if (files.empty()) throw Error(ErrorCode::Empty, "no training files");
    std::vector<Sample> cache;
    cache.reserve(cfg.epoch_size());
    for (std::size_t idx : choose_files(files.size(), cfg.m, rng)) {
        const RasterMovie movie = load_day(files[idx], spec);
        sample_file(files[idx], movie, spec, cfg.k, rng, cache);
    }
    return cache;
}

std::vector<std::vector<std::size_t>> epoch_iter(std::size_t cache_size, std::size_t batch_size,
                                                 std::size_t epoch_index, std::uint64_t seed) {
    if (batch_size < 1) throw Error(ErrorCode::Config, "batch_size must be >= 1");
    std::vector<std::size_t> order(cache_size);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, {0x65706f6368ULL, epoch_index}));
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<std::size_t>> batches;
    for (std::size_t i = 0; i < cache_size; i += batch_size) {
        batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                             order.begin() + static_cast<std::ptrdiff_t>(std::min(cache_size, i + batch_size)));
    }
    return batches;
}

bool needs_refresh(std::size_t epoch_index, const CacheConfig& cfg) {
    return epoch_index > 0 && epoch_index % cfg.refresh_every == 0;
}

std::vector<Sample> build_validation(std::span<const DayFile> city_files, std::span<const std::string> train_cities,
                                     std::size_t n_files, std::size_t k, const PatchSpec& spec, Rng& rng) {
    const std::set<std::string> train(train_cities.begin(), train_cities.end());
    for (const auto& f : city_files) {
        if (train.count(f.meta.city)) {
            throw Error(ErrorCode::Config, "validation city '" + f.meta.city + "' is also a training city");
        }
    }
    CacheConfig cfg;
    cfg.m = n_files;
    cfg.k = k;
    return build_cache(city_files, spec, cfg, rng);
}

std::vector<FullRasterSample> match_metadata_sample(std::span<const SlotRequest> targets,
                                                    std::span<const DayFile> source_files, const PatchSpec& spec,
                                                    Rng& rng) {
    spec.validate();
    std::map<int, std::vector<std::size_t>> by_weekday;
    for (std::size_t i = 0; i < source_files.size(); ++i) by_weekday[source_files[i].meta.weekday].push_back(i);

    std::set<int> missing;
    for (const auto& t : targets) {
        if (!by_weekday.count(t.weekday)) missing.insert(t.weekday);
    }
    if (!missing.empty()) {
        std::string list;
        for (int w : missing) list += (list.empty() ? "" : ",") + std::to_string(w);
        throw Error(ErrorCode::Coverage, "no source file for weekday(s) " + list);
    }

    std::map<std::size_t, RasterMovie> loaded;
    std::vector<FullRasterSample> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        const auto& candidates = by_weekday.at(t.weekday);
        const std::size_t idx = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
        auto it = loaded.find(idx);
        if (it == loaded.end()) it = loaded.emplace(idx, load_day(source_files[idx], spec)).first;
        const RasterMovie& movie = it->second;
        const auto& meta = source_files[idx].meta;
        out.push_back({extract_window(movie, t.slot, spec), extract_future(movie, t.slot, spec),
                       SampleMeta{meta.city, meta.date, t.slot, Origin{}}});
    }
    return out;
}

SamplePipeline::SamplePipeline(std::vector<DayFile> files, PatchSpec spec, CacheConfig cfg)
    : files_(std::move(files)), spec_(std::move(spec)), cfg_(cfg), rng_(derive_seed(cfg.seed, {0x6361636865ULL})) {
    spec_.validate();
    cfg_.validate();
}

const std::vector<Sample>& SamplePipeline::cache_for_epoch(std::size_t epoch) {
    if (!built_) {
        cache_ = build_cache(files_, spec_, cfg_, rng_);
        built_ = true;
        last_epoch_ = epoch;
        return cache_;
    }
    if (epoch < last_epoch_) throw Error(ErrorCode::Config, "epochs must be requested in order");
    for (std::size_t e = last_epoch_ + 1; e <= epoch; ++e) {
        if (needs_refresh(e, cfg_)) {
            cache_ = build_cache(files_, spec_, cfg_, rng_);
            ++refreshes_;
        }
    }
    last_epoch_ = epoch;
    return cache_;
}

}  // namespace t4c
