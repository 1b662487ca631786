#include "t4c/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "t4c/evaluation.hpp"
#include "t4c/historic_average.hpp"
#include "t4c/stitcher.hpp"

namespace t4c::cli {

using nlohmann::json;

namespace {

template <typename T>
T as(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::Config, "field '" + key + "' has the wrong type");
    }
}

using Setter = std::function<void(RunConfig&, const json&, const std::string&)>;

template <typename T, typename F>
Setter field(F&& member) {
    return [member](RunConfig& c, const json& v, const std::string& key) { member(c) = as<T>(v, key); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"seed", field<std::uint64_t>([](RunConfig& c) -> auto& { return c.seed; })},
        {"data_dir", field<std::string>([](RunConfig& c) -> auto& { return c.data_dir; })},
        {"out_dir", field<std::string>([](RunConfig& c) -> auto& { return c.out_dir; })},
        {"cities", field<std::vector<std::string>>([](RunConfig& c) -> auto& { return c.cities; })},
        {"val_city", field<std::string>([](RunConfig& c) -> auto& { return c.val_city; })},
        {"meta_city", field<std::string>([](RunConfig& c) -> auto& { return c.meta_city; })},
        {"start_date", field<std::string>([](RunConfig& c) -> auto& { return c.start_date; })},
        {"n_days", field<std::size_t>([](RunConfig& c) -> auto& { return c.n_days; })},
        {"height", field<std::uint32_t>([](RunConfig& c) -> auto& { return c.height; })},
        {"width", field<std::uint32_t>([](RunConfig& c) -> auto& { return c.width; })},
        {"t_slots", field<std::uint32_t>([](RunConfig& c) -> auto& { return c.t_slots; })},
        {"base_volume", field<double>([](RunConfig& c) -> auto& { return c.base_volume; })},
        {"diurnal_amplitude", field<double>([](RunConfig& c) -> auto& { return c.diurnal_amplitude; })},
        {"noise_sigma", field<double>([](RunConfig& c) -> auto& { return c.noise_sigma; })},
        {"scale_factor", field<double>([](RunConfig& c) -> auto& { return c.scale_factor; })},
        {"d", field<Index>([](RunConfig& c) -> auto& { return c.spec.d; })},
        {"pad", field<Index>([](RunConfig& c) -> auto& { return c.spec.pad; })},
        {"in_slots", field<Index>([](RunConfig& c) -> auto& { return c.spec.in_slots; })},
        {"out_offsets", field<std::vector<Index>>([](RunConfig& c) -> auto& { return c.spec.out_offsets; })},
        {"m", field<std::size_t>([](RunConfig& c) -> auto& { return c.cache.m; })},
        {"k", field<std::size_t>([](RunConfig& c) -> auto& { return c.cache.k; })},
        {"refresh_every", field<std::size_t>([](RunConfig& c) -> auto& { return c.cache.refresh_every; })},
        {"batch_size", field<std::size_t>([](RunConfig& c) -> auto& { return c.cache.batch_size; })},
        {"epochs", field<std::size_t>([](RunConfig& c) -> auto& { return c.train.epochs; })},
        {"lr", field<double>([](RunConfig& c) -> auto& { return c.train.lr; })},
        {"beta1", field<double>([](RunConfig& c) -> auto& { return c.train.beta1; })},
        {"beta2", field<double>([](RunConfig& c) -> auto& { return c.train.beta2; })},
        {"eps", field<double>([](RunConfig& c) -> auto& { return c.train.eps; })},
        {"avg_last", field<std::size_t>([](RunConfig& c) -> auto& { return c.train.avg_last; })},
        {"loss",
         [](RunConfig& c, const json& v, const std::string& key) {
             const auto s = as<std::string>(v, key);
             if (s == "mse") c.train.loss = LossKind::Mse;
             else if (s == "masked") c.train.loss = LossKind::MaskedSpeed;
             else throw Error(ErrorCode::Config, "field 'loss' must be \"mse\" or \"masked\"");
         }},
        {"val_files", field<std::size_t>([](RunConfig& c) -> auto& { return c.val_files; })},
        {"val_k", field<std::size_t>([](RunConfig& c) -> auto& { return c.val_k; })},
        {"predictor", field<std::string>([](RunConfig& c) -> auto& { return c.predictor; })},
        {"model", field<std::string>([](RunConfig& c) -> auto& { return c.model; })},
        {"input", field<std::string>([](RunConfig& c) -> auto& { return c.input; })},
        {"output", field<std::string>([](RunConfig& c) -> auto& { return c.output; })},
        {"pred", field<std::string>([](RunConfig& c) -> auto& { return c.pred; })},
        {"gt", field<std::string>([](RunConfig& c) -> auto& { return c.gt; })},
        {"stride", field<Index>([](RunConfig& c) -> auto& { return c.stride; })},
        {"t0", field<Index>([](RunConfig& c) -> auto& { return c.t0; })},
        {"strides", field<std::vector<Index>>([](RunConfig& c) -> auto& { return c.strides; })},
        {"sweep_samples", field<std::size_t>([](RunConfig& c) -> auto& { return c.sweep_samples; })},
        {"baseline_city", field<std::string>([](RunConfig& c) -> auto& { return c.baseline_city; })},
        {"table_year", field<int>([](RunConfig& c) -> auto& { return c.table_year; })},
        {"test_year", field<int>([](RunConfig& c) -> auto& { return c.test_year; })},
        {"test_slots", field<std::vector<std::uint32_t>>([](RunConfig& c) -> auto& { return c.test_slots; })},
    };
    return table;
}

void apply_object(RunConfig& cfg, const json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::Config, "config must be a flat JSON object");
    for (const auto& [key, value] : doc.items()) {
        const auto it = setters().find(key);
        if (it == setters().end()) throw Error(ErrorCode::Config, "unknown config key '" + key + "'");
        it->second(cfg, value, key);
    }
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::Io, "cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
}

std::string hex64(std::uint64_t v) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << v;
    return s.str();
}

std::uint64_t file_hash(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return fnv1a64(bytes);
}

std::uint64_t city_seed(std::uint64_t seed, const std::string& city) { return derive_seed(seed, {fnv1a64(city)}); }

std::vector<DayFile> files_of(const RunConfig& cfg, std::span<const std::string> cities) {
    std::vector<DayFile> files;
    for (const auto& city : cities) {
        auto f = list_day_files(cfg.data_dir, city);
        files.insert(files.end(), f.begin(), f.end());
    }
    return files;
}

std::unique_ptr<Predictor> make_predictor(const RunConfig& cfg) {
    if (cfg.predictor == "persistence") return std::make_unique<PersistencePredictor>(cfg.spec);
    if (cfg.predictor == "linear") {
        if (cfg.model.empty()) throw Error(ErrorCode::Config, "field 'model' is required for the linear predictor");
        const Checkpoint ckpt = read_checkpoint(cfg.model);
        return std::make_unique<LinearPredictor>(
            LinearModeld::unflatten(ckpt.params, cfg.spec.out_planes(), cfg.spec.in_planes()));
    }
    if (cfg.predictor == "file") {
        if (cfg.model.empty()) throw Error(ErrorCode::Config, "field 'model' must name a T4CP file for the file predictor");
        return std::make_unique<FilePredictor>(read_prediction(cfg.model), cfg.spec);
    }
    throw Error(ErrorCode::Config, "field 'predictor' must be linear, persistence or file");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace

void RunConfig::validate() const {
    spec.validate();
    cache.validate();
    if (cities.empty()) throw Error(ErrorCode::Config, "field 'cities' must not be empty");
    for (const auto& c : cities) {
        if (c.empty() || c.find_first_of("/\\") != std::string::npos) {
            throw Error(ErrorCode::Config, "field 'cities' contains an invalid name");
        }
    }
    (void)parse_date(start_date);
    if (height < 16 || width < 16) throw Error(ErrorCode::Config, "fields 'height'/'width' must be >= 16");
    if (!(scale_factor > 0.0)) throw Error(ErrorCode::Config, "field 'scale_factor' must be positive");
    if (noise_sigma < 0.0) throw Error(ErrorCode::Config, "field 'noise_sigma' must be >= 0");
    if (!(train.lr >= 0.0)) throw Error(ErrorCode::Config, "field 'lr' must be >= 0");
    if (stride < 1) throw Error(ErrorCode::Config, "field 'stride' must be >= 1");
}

std::vector<Index> RunConfig::sweep_strides() const {
    if (!strides.empty()) return strides;
    std::vector<Index> out;
    for (int s : {10, 20, 30, 50, 75, 100}) {
        const auto scaled = static_cast<Index>(std::floor(static_cast<double>(s * spec.d) / 100.0 + 0.5));
        out.push_back(std::clamp<Index>(scaled, 1, spec.d));
    }
    return out;
}

void apply_json(RunConfig& cfg, const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Config, std::string("config is not valid JSON: ") + e.what());
    }
    apply_object(cfg, doc);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Config, "cannot read config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig cfg;
    apply_json(cfg, buf.str());
    return cfg;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
    ensure_dir(cfg.data_dir);
    std::vector<std::string> cities = cfg.cities;
    if (!cfg.val_city.empty() && std::find(cities.begin(), cities.end(), cfg.val_city) == cities.end()) {
        cities.push_back(cfg.val_city);
    }

    // Manifest rows keyed by relative path; rows from earlier runs into the same directory are kept.
    const auto manifest_path = cfg.data_dir / "manifest.csv";
    const std::string header = "path,city,date,weekday,seed,scale_factor,fnv1a64";
    std::map<std::string, std::string> rows;
    if (std::ifstream prev(manifest_path); prev) {
        std::string line;
        while (std::getline(prev, line)) {
            if (line.empty() || line == header) continue;
            rows[line.substr(0, line.find(','))] = line;
        }
    }

    const Date start = parse_date(cfg.start_date);
    std::size_t written = 0;
    for (const auto& name : cities) {
        if (cfg.n_days == 0) break;
        const std::uint64_t seed = city_seed(cfg.seed, name);
        const CityTemplate city = gen_city(seed, cfg.height, cfg.width, name);
        ensure_dir(cfg.data_dir / name);
        for (std::size_t day = 0; day < cfg.n_days; ++day) {
            DayParams params;
            params.base_volume = cfg.base_volume;
            params.diurnal_amplitude = cfg.diurnal_amplitude;
            params.noise_sigma = cfg.noise_sigma;
            params.scale_factor = cfg.scale_factor;
            params.date = add_days(start, static_cast<int>(day));
            params.t_slots = cfg.t_slots;
            const auto [movie, meta] = gen_day(city, params);
            const auto rel = std::filesystem::path(name) / day_filename(meta);
            write_raster(movie, cfg.data_dir / rel);
            std::ostringstream row;
            row << rel.generic_string() << ',' << name << ',' << format_date(meta.date) << ',' << meta.weekday << ','
                << seed << ',' << cfg.scale_factor << ',' << hex64(file_hash(cfg.data_dir / rel));
            rows[rel.generic_string()] = row.str();
            ++written;
        }
    }
    std::string manifest = header + "\n";
    for (const auto& [_, row] : rows) manifest += row + "\n";
    write_text(manifest_path, manifest);
    out << "wrote " << written << " day files to " << cfg.data_dir.string() << "\n";
    return 0;
}

int cmd_train(const RunConfig& cfg, std::ostream& out) {
    if (std::find(cfg.cities.begin(), cfg.cities.end(), cfg.val_city) != cfg.cities.end()) {
        throw Error(ErrorCode::Config, "validation city '" + cfg.val_city + "' is also a training city");
    }
    ensure_dir(cfg.out_dir / "checkpoints");

    Rng init_rng(derive_seed(cfg.seed, {fnv1a64("init")}));
    LinearModeld model = LinearModeld::glorot(cfg.spec.out_planes(), cfg.spec.in_planes(), init_rng);
    write_checkpoint({0, model.flatten()}, cfg.out_dir / "model_init.t4ck");

    TrainResult result;
    if (cfg.train.epochs > 0) {
        auto train_files = files_of(cfg, cfg.cities);
        if (train_files.empty()) throw Error(ErrorCode::Load, "no training files under " + cfg.data_dir.string());
        const auto val_files = list_day_files(cfg.data_dir, cfg.val_city);
        if (val_files.empty()) throw Error(ErrorCode::Load, "no files for validation city '" + cfg.val_city + "'");

        Rng val_rng(derive_seed(cfg.seed, {fnv1a64("validation")}));
        const auto validation = build_validation(val_files, cfg.cities, cfg.val_files, cfg.val_k, cfg.spec, val_rng);
        CacheConfig cache = cfg.cache;
        cache.seed = derive_seed(cfg.seed, {fnv1a64("cache")});
        SamplePipeline pipeline(std::move(train_files), cfg.spec, cache);
        result = train(model, pipeline, validation, cfg.train);
    } else {
        result.final_model = model;
    }

    for (const auto& ckpt : result.checkpoints) {
        std::ostringstream name;
        name << "epoch_" << std::setw(4) << std::setfill('0') << ckpt.epoch << ".t4ck";
        write_checkpoint(ckpt, cfg.out_dir / "checkpoints" / name.str());
    }
    const std::uint32_t last_epoch = result.checkpoints.empty() ? 0 : result.checkpoints.back().epoch;
    write_checkpoint({last_epoch, result.final_model.flatten()}, cfg.out_dir / "model_avg.t4ck");

    std::ostringstream loss_csv, val_csv;
    loss_csv << std::setprecision(17) << "epoch,batch,loss_normalized\n";
    for (const auto& b : result.train_curve) loss_csv << b.epoch << ',' << b.batch << ',' << b.loss << '\n';
    val_csv << std::setprecision(17) << "epoch,mse_normalized,mse_u8\n";
    for (const auto& v : result.validation_curve) val_csv << v.epoch << ',' << v.mse_normalized << ',' << v.mse_u8 << '\n';
    write_text(cfg.out_dir / "train_loss.csv", loss_csv.str());
    write_text(cfg.out_dir / "val_mse.csv", val_csv.str());

    out << "trained " << result.checkpoints.size() << " epochs";
    if (!result.validation_curve.empty()) out << ", final validation mse_u8=" << result.validation_curve.back().mse_u8;
    out << "\n";
    return 0;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out) {
    if (cfg.input.empty()) throw Error(ErrorCode::Config, "field 'input' is required");
    if (cfg.stride > cfg.spec.d) {
        throw Error(ErrorCode::Config, "stride " + std::to_string(cfg.stride) + " exceeds d=" + std::to_string(cfg.spec.d));
    }
    const auto predictor = make_predictor(cfg);
    const RasterMovie movie = read_raster(cfg.input);
    const Index t0 = Index{movie.t_slots} == cfg.spec.in_slots ? 0 : cfg.t0;
    const RasterMovie window = extract_window(movie, t0, cfg.spec);
    const TiledPrediction tiled = predict_tiled(*predictor, window, cfg.spec, cfg.stride);

    std::filesystem::path target = cfg.output;
    if (target.empty()) {
        ensure_dir(cfg.out_dir);
        target = cfg.out_dir / (cfg.input.stem().string() + "_t" + std::to_string(t0) + "_s" +
                                std::to_string(cfg.stride) + ".t4cp");
    }
    write_prediction(tiled.prediction, target);
    out << "tiled " << tiled.patches << (tiled.patches == 1 ? " patch" : " patches")
        << ", max coverage " << tiled.coverage.maxCoeff() << "\n";
    out << "wrote " << target.string() << "\n";
    return 0;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
    if (cfg.pred.empty() || cfg.gt.empty()) throw Error(ErrorCode::Config, "fields 'pred' and 'gt' are required");
    const PredictionTensor pred = read_prediction(cfg.pred);
    PredictionTensor gt;
    if (peek_magic(cfg.gt) == "T4CR") {
        gt = extract_future(read_raster(cfg.gt), cfg.t0, cfg.spec);
    } else {
        gt = read_prediction(cfg.gt);
    }
    const EvalReport report = decompose(pred, gt);
    write_report(out, report);
    const SubstitutionResult sub = substitute_speed_constant(pred, gt, 127.0);
    out << "mse_total_speed127=" << std::setprecision(10) << sub.mse_after << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto strides = cfg.sweep_strides();
    for (Index s : strides) {
        if (s < 1 || s > cfg.spec.d) throw Error(ErrorCode::Config, "stride " + std::to_string(s) + " exceeds d");
    }
    const auto predictor = make_predictor(cfg);
    const std::string meta_city = cfg.meta_city.empty() ? cfg.cities.front() : cfg.meta_city;
    const auto meta_files = list_day_files(cfg.data_dir, meta_city);
    const auto source_files = list_day_files(cfg.data_dir, cfg.val_city);
    if (meta_files.empty() || source_files.empty()) throw Error(ErrorCode::Load, "sweep needs metadata and source files");

    Rng rng(derive_seed(cfg.seed, {fnv1a64("sweep")}));
    std::vector<SlotRequest> requests;
    for (std::size_t i = 0; i < cfg.sweep_samples; ++i) {
        const auto& f = meta_files[std::uniform_int_distribution<std::size_t>(0, meta_files.size() - 1)(rng)];
        const Index slot = std::uniform_int_distribution<Index>(0, Index{cfg.t_slots} - cfg.spec.span())(rng);
        requests.push_back({f.meta.weekday, slot});
    }
    const auto samples = match_metadata_sample(requests, source_files, cfg.spec, rng);
    const auto rows = stride_sweep(*predictor, samples, cfg.spec, strides);

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    ensure_dir(cfg.out_dir);
    write_text(cfg.out_dir / "sweep.csv", csv.str());
    out << csv.str();
    return 0;
}

int cmd_baseline(const RunConfig& cfg, std::ostream& out) {
    const std::string city = cfg.baseline_city.empty() ? cfg.cities.front() : cfg.baseline_city;
    std::vector<std::filesystem::path> table_files;
    std::vector<DayFile> test_files;
    for (auto& f : list_day_files(cfg.data_dir, city)) {
        const int year = static_cast<int>(f.meta.date.year());
        if (year == cfg.table_year) table_files.push_back(f.path);
        if (year == cfg.test_year) test_files.push_back(f);
    }
    if (table_files.empty()) throw Error(ErrorCode::Load, "no " + std::to_string(cfg.table_year) + " files for " + city);
    if (test_files.empty()) throw Error(ErrorCode::Load, "no " + std::to_string(cfg.test_year) + " files for " + city);

    const AvgTable table = fit_historic_average(table_files);
    ensure_dir(cfg.out_dir / "baseline");
    double total = 0.0;
    std::size_t n = 0;
    out << std::setprecision(10);
    for (const auto& f : test_files) {
        const RasterMovie movie = read_raster(f.path);
        for (std::uint32_t t_hat : cfg.test_slots) {
            const PredictionTensor pred = predict_historic_shifted(table, observed_hour(movie, t_hat), t_hat,
                                                                   f.meta.weekday, cfg.spec.out_offsets);
            const auto name = format_date(f.meta.date) + "_" + city + "_t" + std::to_string(t_hat) + ".t4cp";
            write_prediction(pred, cfg.out_dir / "baseline" / name);
            const PredictionTensor truth = extract_future(movie, Index{t_hat} - cfg.spec.in_slots, cfg.spec);
            const double mse = mse_uint8(quantized(pred), truth);
            out << name << " mse_u8=" << mse << "\n";
            total += mse;
            ++n;
        }
    }
    out << "mean_mse_u8=" << (n ? total / static_cast<double>(n) : 0.0) << "\n";
    return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Patch-wise traffic raster forecasting toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> data_dir, out_dir, model, input, pred, gt;
    std::optional<Index> d, stride, t0;
    std::vector<std::string> overrides;

    app.add_option("--config", config_path, "Flat JSON config file");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--data-dir", data_dir, "Directory of <city>/<date>_<city>.t4cr files");
    app.add_option("--out-dir", out_dir, "Output directory");
    app.add_option("--set", overrides, "Override a config key, KEY=JSON_VALUE");

    auto* gen = app.add_subcommand("gen", "Generate synthetic cities and days");
    auto* train_cmd = app.add_subcommand("train", "Train the linear learner on cached patches");
    auto* predict = app.add_subcommand("predict", "Tile, predict and stitch one input hour");
    predict->add_option("--model", model, "Checkpoint (linear) or T4CP file (file predictor)");
    predict->add_option("--d", d, "Patch side length");
    predict->add_option("--stride", stride, "Tiling stride");
    predict->add_option("--input", input, "Input .t4cr movie");
    predict->add_option("--t0", t0, "First input slot");
    auto* eval = app.add_subcommand("eval", "Score a prediction file against ground truth");
    eval->add_option("--pred", pred, "Prediction T4CP file");
    eval->add_option("--gt", gt, "Ground truth T4CP file, or a .t4cr movie with --t0");
    eval->add_option("--t0", t0, "First input slot when --gt is a movie");
    auto* sweep = app.add_subcommand("sweep", "Stride sweep on metadata-matched samples");
    sweep->add_option("--model", model, "Checkpoint for the linear predictor");
    auto* baseline = app.add_subcommand("baseline", "Historic-average baseline with shift ratio");
    for (auto* sub : {gen, train_cmd, predict, eval, sweep, baseline}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(ErrorCode::Config, "--set expects KEY=VALUE, got '" + kv + "'");
            const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
            json parsed = json::parse(value, nullptr, false);
            if (parsed.is_discarded()) parsed = value;
            apply_object(cfg, json{{key, parsed}});
        }
        if (seed) cfg.seed = *seed;
        if (data_dir) cfg.data_dir = *data_dir;
        if (out_dir) cfg.out_dir = *out_dir;
        if (model) cfg.model = *model;
        if (input) cfg.input = *input;
        if (pred) cfg.pred = *pred;
        if (gt) cfg.gt = *gt;
        if (d) cfg.spec.d = *d;
        if (stride) cfg.stride = *stride;
        if (t0) cfg.t0 = *t0;
        try {
            cfg.validate();
        } catch (const Error& e) {
            throw Error(ErrorCode::Config, e.what());
        }

        if (gen->parsed()) return cmd_gen(cfg, out);
        if (train_cmd->parsed()) return cmd_train(cfg, out);
        if (predict->parsed()) return cmd_predict(cfg, out);
        if (eval->parsed()) return cmd_eval(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out);
        if (baseline->parsed()) return cmd_baseline(cfg, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == ErrorCode::Config ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace t4c::cli
