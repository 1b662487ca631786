#include <doctest.h>

#include <fstream>
#include <sstream>

#include "t4c/checkpoint.hpp"
#include "t4c/cli.hpp"
#include "test_support.hpp"

using namespace t4c;
using t4c::testing::TempDir;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "t4c");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// Small, fast world shared by most tests.
std::vector<std::string> small_world(const TempDir& dir) {
    return {"--data-dir", (dir / "data").string(), "--out-dir", (dir / "out").string(),
            "--set", "height=40", "--set", "width=36", "--set", "t_slots=60", "--set", "n_days=2",
            "--set", "d=16", "--set", "m=2", "--set", "k=3", "--set", "val_files=2", "--set", "val_k=2"};
}

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<std::string> extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

}  // namespace

TEST_CASE("config parsing") {
    cli::RunConfig cfg;
    cli::apply_json(cfg, R"({"seed": 7, "cities": ["a"], "d": 20, "loss": "masked", "strides": [5, 10]})");
    CHECK(cfg.seed == 7);
    CHECK(cfg.cities == std::vector<std::string>{"a"});
    CHECK(cfg.spec.d == 20);
    CHECK(cfg.train.loss == LossKind::MaskedSpeed);
    CHECK(cfg.sweep_strides() == std::vector<Index>{5, 10});

    cli::RunConfig defaults;
    CHECK(defaults.sweep_strides() == std::vector<Index>{3, 6, 10, 16, 24, 32});

    try {
        cli::apply_json(cfg, R"({"sed": 1})");
        FAIL("unknown key accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Config);
        CHECK(std::string(e.what()).find("sed") != std::string::npos);
    }
    CHECK_THROWS_AS(cli::apply_json(cfg, R"({"d": "wide"})"), Error);
    CHECK_THROWS_AS(cli::apply_json(cfg, "{not json"), Error);
}

TEST_CASE("exit codes for configuration problems") {
    TempDir dir("cli");
    std::ofstream(dir / "bad.json") << R"({"unknown_key": 1})";
    CHECK(run_cli({"--config", (dir / "bad.json").string(), "gen"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"gen", "--set", "height=4"}).code == 2);
    CHECK(run_cli({"gen", "--set", "novalue"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("gen is deterministic and writes a manifest") {
    TempDir a("cli"), b("cli");
    const CliResult ra = run_cli(with(small_world(a), {"gen"}));
    const CliResult rb = run_cli(with(small_world(b), {"gen"}));
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    const std::string manifest = slurp(a / "data/manifest.csv");
    CHECK(manifest == slurp(b / "data/manifest.csv"));
    CHECK(manifest.rfind("path,city,date,weekday,seed,scale_factor,fnv1a64\n", 0) == 0);
    // alpha, beta and gamma, two days each
    CHECK(std::count(manifest.begin(), manifest.end(), '\n') == 7);
    CHECK(slurp(a / "data/alpha/2019-01-08_alpha.t4cr") == slurp(b / "data/alpha/2019-01-08_alpha.t4cr"));
    const RasterMovie m = read_raster(a / "data/gamma/2019-01-07_gamma.t4cr");
    CHECK(m.t_slots == 60);
    CHECK(m.height == 40);
    CHECK(m.width == 36);

    TempDir c("cli");
    CHECK(run_cli(with(small_world(c), {"--seed", "99", "gen"})).code == 0);
    CHECK(slurp(c / "data/alpha/2019-01-08_alpha.t4cr") != slurp(a / "data/alpha/2019-01-08_alpha.t4cr"));

    TempDir e("cli");
    const CliResult none = run_cli(with(small_world(e), {"--set", "n_days=0", "gen"}));
    CHECK(none.code == 0);
    CHECK(slurp(e / "data/manifest.csv") == "path,city,date,weekday,seed,scale_factor,fnv1a64\n");

    std::ofstream(e / "blocker") << "x";
    CHECK(run_cli({"--data-dir", (e / "blocker/data").string(), "--set", "n_days=1", "gen"}).code == 1);
}

TEST_CASE("train, predict, eval and sweep end to end") {
    TempDir dir("cli");
    const auto world = small_world(dir);
    REQUIRE(run_cli(with(world, {"gen"})).code == 0);

    SUBCASE("zero epochs still writes the models") {
        const CliResult r = run_cli(with(world, {"--set", "epochs=0", "train"}));
        REQUIRE(r.code == 0);
        CHECK(std::filesystem::exists(dir / "out/model_init.t4ck"));
        CHECK(std::filesystem::exists(dir / "out/model_avg.t4ck"));
        CHECK(slurp(dir / "out/val_mse.csv") == "epoch,mse_normalized,mse_u8\n");
        CHECK(read_checkpoint(dir / "out/model_avg.t4ck").params == read_checkpoint(dir / "out/model_init.t4ck").params);
    }

    SUBCASE("overlapping validation city is a config error") {
        CHECK(run_cli(with(world, {"--set", "val_city=alpha", "train"})).code == 2);
    }

    SUBCASE("full pipeline") {
        const auto train_args = with(world, {"--set", "epochs=3", "train"});
        REQUIRE(run_cli(train_args).code == 0);
        const std::string val1 = slurp(dir / "out/val_mse.csv");
        const std::string loss1 = slurp(dir / "out/train_loss.csv");
        CHECK(std::count(val1.begin(), val1.end(), '\n') == 4);
        CHECK(std::filesystem::exists(dir / "out/checkpoints/epoch_0002.t4ck"));
        REQUIRE(run_cli(train_args).code == 0);
        CHECK(slurp(dir / "out/val_mse.csv") == val1);
        CHECK(slurp(dir / "out/train_loss.csv") == loss1);

        const std::string model = (dir / "out/model_avg.t4ck").string();
        const std::string input = (dir / "data/gamma/2019-01-08_gamma.t4cr").string();
        const auto predict = with(world, {"predict", "--model", model, "--input", input, "--stride", "8", "--t0", "20"});
        const CliResult p = run_cli(predict);
        REQUIRE(p.code == 0);
        // rows {0, 8, 16, 24}, cols {0, 8, 16, 20}
        const auto max_cov = coverage_map(40, 36, tile_grid(40, 36, 16, 8)).maxCoeff();
        CHECK(p.out.find("tiled 16 patches, max coverage " + std::to_string(max_cov) + "\n") != std::string::npos);
        const auto pred_path = dir / "out/2019-01-08_gamma_t20_s8.t4cp";
        const std::string first = slurp(pred_path);
        REQUIRE(run_cli(predict).code == 0);
        CHECK(slurp(pred_path) == first);
        const PredictionTensor pt = read_prediction(pred_path);
        CHECK(pt.frames == 6);
        CHECK(pt.height() == 40);

        CHECK(run_cli(with(world, {"predict", "--model", model, "--input", input, "--stride", "17"})).code == 2);
        CHECK(run_cli(with(world, {"predict", "--model", (dir / "none.t4ck").string(), "--input", input})).code == 1);

        const CliResult self = run_cli(with(world, {"eval", "--pred", pred_path.string(), "--gt", pred_path.string()}));
        REQUIRE(self.code == 0);
        CHECK(self.out.find("mse_total=0\n") != std::string::npos);
        CHECK((self.out.find("zero_recall=1\n") != std::string::npos || self.out.find("zero_recall=absent\n") != std::string::npos));
        const CliResult vs_movie =
            run_cli(with(world, {"eval", "--pred", pred_path.string(), "--gt", input, "--t0", "20"}));
        REQUIRE(vs_movie.code == 0);
        CHECK(vs_movie.out.find("mse_total_speed127=") != std::string::npos);

        const CliResult sweep =
            run_cli(with(world, {"--set", "sweep_samples=3", "sweep", "--model", model}));
        REQUIRE(sweep.code == 0);
        const std::string csv = slurp(dir / "out/sweep.csv");
        CHECK(csv.rfind("stride,patches,mse\n16,", 0) == 0);
        // defaults for d=16: {2, 3, 5, 8, 12, 16}
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

        const CliResult pers = run_cli(with(world, {"--set", "predictor=persistence", "--set", "output=" + (dir / "p.t4cp").string(),
                                                    "predict", "--input", input, "--t0", "20"}));
        CHECK(pers.code == 0);
        const CliResult file = run_cli(with(world, {"--set", "predictor=file", "--set", "output=" + (dir / "f.t4cp").string(),
                                                    "predict", "--model", (dir / "p.t4cp").string(), "--input", input,
                                                    "--t0", "20"}));
        REQUIRE(file.code == 0);
        CHECK(slurp(dir / "f.t4cp") == slurp(dir / "p.t4cp"));
    }
}

TEST_CASE("predict on the default desk-scale grid") {
    TempDir dir("cli");
    const std::vector<std::string> world{"--data-dir", (dir / "data").string(), "--out-dir", (dir / "out").string(),
                                         "--set", "t_slots=40", "--set", "n_days=1", "--set", "cities=[\"alpha\"]"};
    REQUIRE(run_cli(with(world, {"gen"})).code == 0);
    const CliResult r = run_cli(with(world, {"--set", "predictor=persistence", "predict", "--input",
                                             (dir / "data/alpha/2019-01-07_alpha.t4cr").string(), "--t0", "5"}));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("tiled 30 patches") != std::string::npos);
}

TEST_CASE("historic baseline under a multiplicative year shift") {
    TempDir dir("cli");
    const std::vector<std::string> world{"--data-dir", (dir / "data").string(), "--out-dir", (dir / "out").string(),
                                         "--set", "height=24", "--set", "width=24", "--set", "t_slots=160",
                                         "--set", "n_days=7", "--set", "noise_sigma=0", "--set", "cities=[\"alpha\"]",
                                         "--set", "test_slots=[100, 120]"};
    REQUIRE(run_cli(with(world, {"gen"})).code == 0);
    REQUIRE(run_cli(with(world, {"--set", "start_date=\"2020-01-06\"", "--set", "scale_factor=2", "gen"})).code == 0);
    const CliResult r = run_cli(with(world, {"baseline"}));
    REQUIRE(r.code == 0);
    const auto pos = r.out.find("mean_mse_u8=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 12)) <= 0.25);
    CHECK(std::filesystem::exists(dir / "out/baseline/2020-01-06_alpha_t100.t4cp"));

    CHECK(run_cli(with(world, {"--set", "test_year=2021", "baseline"})).code == 1);
}
