#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>

#include "primgen/generator.hpp"
#include "primgen/png_io.hpp"
#include "test_helpers.hpp"

using namespace primgen;
using nlohmann::json;
namespace fs = std::filesystem;

TEST_CASE("defaults reproduce the final recipe") {
    const GeneratorConfig cfg;
    CHECK(cfg.variant == Variant::PrimitivesPS);
    CHECK(cfg.resolution == 256);
    CHECK(cfg.shapes == 100);
    CHECK(cfg.size_policy.kind == SizePolicy::Kind::Decay);
    CHECK(cfg.a_range.lo == 0.5);
    CHECK(cfg.a_range.hi == 3.5);
    CHECK(cfg.normalize == NormalizeMode::MinMax);
    CHECK_FALSE(cfg.label_count.has_value());
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config validation rejects bad values") {
    GeneratorConfig cfg;
    cfg.resolution = 100;
    CHECK_THROWS_WITH_AS(cfg.validate(), "resolution must be a power of two", config_error);
    cfg.resolution = 4;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg.resolution = 8192;
    CHECK_THROWS_AS(cfg.validate(), config_error);

    cfg = GeneratorConfig{};
    cfg.count = 0;
    CHECK_THROWS_AS(cfg.validate(), config_error);

    cfg = GeneratorConfig{};
    cfg.label_count = 0;
    CHECK_THROWS_AS(cfg.validate(), config_error);

    cfg = GeneratorConfig{};
    cfg.shapes = -1;
    CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("name round-trips for enums and policies") {
    for (const std::string name :
         {"pink-noise", "primitives", "primitives-s", "primitives-ps", "pinknoise-ps"})
        CHECK(variant_name(parse_variant(name)) == name);
    CHECK_THROWS_AS(parse_variant("fractal"), config_error);

    CHECK(parse_size_policy("decay").kind == SizePolicy::Kind::Decay);
    CHECK(parse_size_policy("rand").kind == SizePolicy::Kind::Rand);
    CHECK(parse_size_policy("fix:0.5").fix_ratio == 0.5);
    CHECK_THROWS_AS(parse_size_policy("fix:zero"), config_error);
    CHECK_THROWS_AS(parse_size_policy("fix:0.5junk"), config_error);
    CHECK_THROWS_AS(parse_size_policy("grow"), config_error);

    CHECK(parse_normalize("minmax") == NormalizeMode::MinMax);
    CHECK(parse_normalize("stdclip3") == NormalizeMode::StdClip3);
    CHECK_THROWS_AS(parse_normalize("clamp"), config_error);
}

TEST_CASE("labels are uniform, reproducible, and drawn per image") {
    RandomStream r1(5, 3);
    RandomStream r2(5, 3);
    CHECK(assign_label(r1, 10) == assign_label(r2, 10));

    for (int i = 0; i < 100; ++i) {
        RandomStream rng(6, i);
        CHECK(assign_label(rng, 1) == 0);
    }

    std::vector<int> counts(10, 0);
    for (int i = 0; i < 10000; ++i) {
        RandomStream rng(7, i);
        ++counts[assign_label(rng, 10)];
    }
    for (int c : counts) {
        CHECK(c >= 800);
        CHECK(c <= 1200);
    }

    RandomStream bad(8, 0);
    CHECK_THROWS_AS(assign_label(bad, 0), config_error);
}

namespace {

GeneratorConfig small_config(std::uint64_t count = 4) {
    GeneratorConfig cfg;
    cfg.resolution = 32;
    cfg.count = count;
    cfg.seed = 77;
    cfg.shapes = 30;
    return cfg;
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

TEST_CASE("dataset output is invariant to the worker count") {
    testutil::TempDir d1("gen1"), d4("gen4");
    generate_dataset(small_config(), d1.path(), 1);
    generate_dataset(small_config(), d4.path(), 4);

    const auto files1 = sorted_files(d1.path());
    const auto files4 = sorted_files(d4.path());
    REQUIRE(files1.size() == files4.size());
    REQUIRE(files1.size() == 5u);  // 4 images + manifest
    for (std::size_t i = 0; i < files1.size(); ++i) {
        CHECK(files1[i].filename() == files4[i].filename());
        CHECK(testutil::slurp(files1[i]) == testutil::slurp(files4[i]));
    }
}

TEST_CASE("manifest records every image and regenerates bit-exactly") {
    testutil::TempDir dir("gen_manifest");
    GeneratorConfig cfg = small_config(6);
    cfg.label_count = 5;
    cfg.variant = Variant::PrimitivesPS;
    const DatasetManifest manifest = generate_dataset(cfg, dir.path(), 2);

    CHECK(manifest.images.size() == 6u);
    std::set<std::string> names;
    for (const ImageRecord& rec : manifest.images) {
        names.insert(rec.filename);
        CHECK(fs::exists(dir.path() / rec.filename));
        for (double a : rec.exponents) {
            CHECK(a >= cfg.a_range.lo);
            CHECK(a <= cfg.a_range.hi);
        }
        REQUIRE(rec.label.has_value());
        CHECK(*rec.label >= 0);
        CHECK(*rec.label < 5);
        CHECK(rec.shape_count == cfg.shapes);
        CHECK(rec.saliency_box.has_value());
    }
    CHECK(names.size() == 6u);

    // Round-trip the manifest config and regenerate.
    const json parsed = json::parse(testutil::slurp(dir.path() / "manifest.json"));
    GeneratorConfig redo;
    redo.variant = parse_variant(parsed["config"]["variant"]);
    redo.resolution = parsed["config"]["resolution"];
    redo.count = parsed["config"]["count"];
    redo.seed = parsed["config"]["seed"];
    redo.shapes = parsed["config"]["shapes"];
    redo.size_policy = parse_size_policy(parsed["config"]["size_policy"]);
    redo.a_range = ExponentRange(parsed["config"]["a_min"], parsed["config"]["a_max"]);
    if (!parsed["config"]["label_count"].is_null())
        redo.label_count = parsed["config"]["label_count"].get<int>();
    redo.normalize = parse_normalize(parsed["config"]["normalize"]);
    redo.saliency = {parsed["config"]["salient_size_min"], parsed["config"]["salient_size_max"],
                     parsed["config"]["salient_center_min"],
                     parsed["config"]["salient_center_max"]};

    testutil::TempDir redo_dir("gen_redo");
    generate_dataset(redo, redo_dir.path(), 3);
    for (const ImageRecord& rec : manifest.images)
        CHECK(testutil::slurp(dir.path() / rec.filename) ==
              testutil::slurp(redo_dir.path() / rec.filename));
    CHECK(testutil::slurp(dir.path() / "manifest.json") ==
          testutil::slurp(redo_dir.path() / "manifest.json"));
}

TEST_CASE("requesting labels does not change the pixels") {
    testutil::TempDir plain("gen_plain"), labelled("gen_lab");
    GeneratorConfig cfg = small_config(3);
    generate_dataset(cfg, plain.path(), 1);
    cfg.label_count = 10;
    generate_dataset(cfg, labelled.path(), 1);
    for (int i = 0; i < 3; ++i) {
        const std::string name = "img_0000000" + std::to_string(i) + ".png";
        CHECK(testutil::slurp(plain.path() / name) == testutil::slurp(labelled.path() / name));
    }
}

TEST_CASE("images decode to the configured resolution") {
    testutil::TempDir dir("gen_decode");
    generate_dataset(small_config(2), dir.path(), 1);
    const Png8 png = read_png(dir.path() / "img_00000000.png");
    CHECK(png.width == 32);
    CHECK(png.height == 32);
    CHECK(png.channels == 3);
}

TEST_CASE("aborted runs leave no manifest behind") {
    testutil::TempDir dir("gen_abort");
    // A directory squatting on an image filename forces a write failure.
    fs::create_directories(dir.path() / "img_00000001.png");
    CHECK_THROWS_AS(generate_dataset(small_config(3), dir.path(), 2), io_error);
    CHECK_FALSE(fs::exists(dir.path() / "manifest.json"));

    // Re-run into a clean directory succeeds.
    testutil::TempDir clean("gen_clean");
    CHECK_NOTHROW(generate_dataset(small_config(3), clean.path(), 2));
    CHECK(fs::exists(clean.path() / "manifest.json"));
}

TEST_CASE("manifest serializes reals with 17 significant digits") {
    DatasetManifest m;
    m.config = small_config(1);
    m.tool_version = "0.0.0";
    ImageRecord rec;
    rec.filename = "img_00000000.png";
    rec.index = 0;
    rec.exponents = {1.0 / 3.0};
    rec.shape_count = 0;
    m.images.push_back(rec);

    const std::string text = manifest_to_json(m);
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    const json parsed = json::parse(text);
    CHECK(parsed["images"][0]["exponents"][0].get<double>() == 1.0 / 3.0);
}
