// primgen: deterministic procedural pretraining-image synthesizer and the
// matching spectrum / filter-diversity analysis commands.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "primgen/analysis.hpp"
#include "primgen/generator.hpp"
#include "primgen/parallel.hpp"
#include "primgen/png_io.hpp"
#include "primgen/version.hpp"
#include "primgen/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace primgen;

namespace {

void echo_config(const json& resolved) {
    std::cerr << "CONFIG: " << resolved.dump() << "\n";
}

void emit_report(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw io_error("cannot write report to " + out_path);
    out << report.dump(2) << "\n";
    if (!out) throw io_error("failed writing report to " + out_path);
}

json distance_report(const SpectrumStats& a, const SpectrumStats& b,
                     const SpectrumDistance& d) {
    return json{{"ssim", d.ssim},
                {"l1", d.l1},
                {"l2", d.l2},
                {"resolution", a.resolution},
                {"samples_a", a.samples},
                {"samples_b", b.samples},
                {"log_magnitude", a.log_magnitude},
                {"ssim_params", {{"k1", 0.01}, {"k2", 0.03}, {"window", 7}}}};
}

struct GenerateArgs {
    std::string variant = "primitives-ps";
    std::uint64_t count = 1;
    int resolution = 256;
    std::uint64_t seed = 0;
    int shapes = 100;
    std::string size_policy = "decay";
    double a_min = 0.5;
    double a_max = 3.5;
    int labels = 0;  // 0 = unlabelled
    std::string normalize = "minmax";
    std::string out;
    int workers = default_worker_count();
    double salient_size_min = 1.0 / 3.0;
    double salient_size_max = 2.0 / 3.0;
    double salient_center_min = 1.0 / 3.0;
    double salient_center_max = 2.0 / 3.0;

    GeneratorConfig to_config() const {
        GeneratorConfig cfg;
        cfg.variant = parse_variant(variant);
        cfg.count = count;
        cfg.resolution = resolution;
        cfg.seed = seed;
        cfg.shapes = shapes;
        cfg.size_policy = parse_size_policy(size_policy);
        cfg.a_range = ExponentRange(a_min, a_max);
        if (labels > 0) cfg.label_count = labels;
        cfg.normalize = parse_normalize(normalize);
        cfg.saliency = {salient_size_min, salient_size_max, salient_center_min,
                        salient_center_max};
        cfg.validate();
        return cfg;
    }
};

int run_generate(const GenerateArgs& args) {
    const GeneratorConfig cfg = args.to_config();

    echo_config(json{{"subcommand", "generate"},
                     {"variant", variant_name(cfg.variant)},
                     {"count", cfg.count},
                     {"resolution", cfg.resolution},
                     {"seed", cfg.seed},
                     {"shapes", cfg.shapes},
                     {"size_policy", size_policy_name(cfg.size_policy)},
                     {"a_min", cfg.a_range.lo},
                     {"a_max", cfg.a_range.hi},
                     {"labels", cfg.label_count ? json(*cfg.label_count) : json(nullptr)},
                     {"normalize", normalize_name(cfg.normalize)},
                     {"salient_size_min", cfg.saliency.size_lo},
                     {"salient_size_max", cfg.saliency.size_hi},
                     {"salient_center_min", cfg.saliency.center_lo},
                     {"salient_center_max", cfg.saliency.center_hi},
                     {"out", args.out},
                     {"workers", args.workers}});

    try {
        generate_dataset(cfg, args.out, args.workers);
    } catch (...) {
        std::cerr << "warning: aborted with partial output in " << args.out
                  << " (no manifest written)\n";
        throw;
    }
    std::cout << "wrote " << cfg.count << " images + manifest.json to " << args.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic procedural image synthesizer and analysis tools"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("primgen ") + kVersion);

    // generate
    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Synthesize a dataset of PNGs + manifest");
    generate->add_option("--variant", gen.variant, "Generator variant")
        ->check(CLI::IsMember(
            {"pink-noise", "primitives", "primitives-s", "primitives-ps", "pinknoise-ps"}))
        ->capture_default_str();
    generate->add_option("--count", gen.count, "Number of images")->capture_default_str();
    generate->add_option("--resolution", gen.resolution, "Image side in pixels (power of two)")
        ->capture_default_str();
    generate->add_option("--seed", gen.seed, "Dataset seed")->capture_default_str();
    generate->add_option("--shapes", gen.shapes, "Shape count N per image")
        ->capture_default_str();
    generate->add_option("--size-policy", gen.size_policy, "fix:<r>, rand or decay")
        ->capture_default_str();
    generate->add_option("--a-min", gen.a_min, "Exponent range lower bound")
        ->capture_default_str();
    generate->add_option("--a-max", gen.a_max, "Exponent range upper bound")
        ->capture_default_str();
    generate->add_option("--labels", gen.labels, "Random label count K (omit for none)")
        ->check(CLI::PositiveNumber);
    generate->add_option("--normalize", gen.normalize, "Pixel normalization")
        ->check(CLI::IsMember({"minmax", "stdclip3"}))
        ->capture_default_str();
    generate->add_option("--out", gen.out, "Output directory")->required();
    generate->add_option("--workers", gen.workers, "Worker threads")
        ->envname("PRIMGEN_WORKERS")
        ->capture_default_str();
    generate->add_option("--salient-size-min", gen.salient_size_min,
                         "Salient size lower bound, fraction of H");
    generate->add_option("--salient-size-max", gen.salient_size_max,
                         "Salient size upper bound, fraction of H");
    generate->add_option("--salient-center-min", gen.salient_center_min,
                         "Salient center lower bound, fraction of H");
    generate->add_option("--salient-center-max", gen.salient_center_max,
                         "Salient center upper bound, fraction of H");

    // analyze-spectrum
    std::string spec_a, spec_b, spec_out;
    bool linear_magnitude = false;
    int spec_workers = default_worker_count();
    auto* analyze_spectrum = app.add_subcommand(
        "analyze-spectrum", "Mean magnitude-spectrum SSIM/L1/L2 between two datasets");
    analyze_spectrum->add_option("--a", spec_a, "First dataset directory")->required();
    analyze_spectrum->add_option("--b", spec_b, "Second dataset directory")->required();
    analyze_spectrum->add_flag("--linear-magnitude", linear_magnitude,
                               "Compare |F| instead of log(1+|F|)");
    analyze_spectrum->add_option("--out", spec_out, "Report path (default stdout)");
    analyze_spectrum->add_option("--workers", spec_workers, "Worker threads")
        ->envname("PRIMGEN_WORKERS");

    // analyze-slope
    std::string slope_dataset, slope_out;
    int slope_workers = default_worker_count();
    auto* analyze_slope =
        app.add_subcommand("analyze-slope", "Radial log-magnitude slope of a dataset");
    analyze_slope->add_option("--dataset", slope_dataset, "Dataset directory")->required();
    analyze_slope->add_option("--out", slope_out, "Report path (default stdout)");
    analyze_slope->add_option("--workers", slope_workers, "Worker threads")
        ->envname("PRIMGEN_WORKERS");

    // analyze-filters
    std::string filters_dir, filters_out;
    auto* analyze_filters = app.add_subcommand(
        "analyze-filters", "Pairwise filter cosine similarity over WT01 layer files");
    analyze_filters->add_option("--weights", filters_dir, "Directory of WT01 layer files")
        ->required();
    analyze_filters->add_option("--out", filters_out, "Report path (default stdout)");

    // render-spectrum
    std::string render_dataset, render_out;
    int render_workers = default_worker_count();
    auto* render_spectrum = app.add_subcommand(
        "render-spectrum", "Write the mean log-magnitude field as grayscale PNG");
    render_spectrum->add_option("--dataset", render_dataset, "Dataset directory")->required();
    render_spectrum->add_option("--out", render_out, "Output PNG path")->required();
    render_spectrum->add_option("--workers", render_workers, "Worker threads")
        ->envname("PRIMGEN_WORKERS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (generate->parsed()) return run_generate(gen);

        if (analyze_spectrum->parsed()) {
            echo_config(json{{"subcommand", "analyze-spectrum"},
                             {"a", spec_a},
                             {"b", spec_b},
                             {"log_magnitude", !linear_magnitude},
                             {"out", spec_out},
                             {"workers", spec_workers}});
            const SpectrumStats sa = dataset_spectrum(spec_a, spec_workers, !linear_magnitude);
            const SpectrumStats sb = dataset_spectrum(spec_b, spec_workers, !linear_magnitude);
            emit_report(distance_report(sa, sb, spectrum_distance(sa, sb)), spec_out);
            return 0;
        }

        if (analyze_slope->parsed()) {
            echo_config(json{{"subcommand", "analyze-slope"},
                             {"dataset", slope_dataset},
                             {"out", slope_out},
                             {"workers", slope_workers}});
            const SpectrumStats stats = dataset_spectrum(slope_dataset, slope_workers);
            json profile = json::array();
            for (const RadialBin& bin : stats.profile)
                profile.push_back(json{{"freq", bin.freq}, {"mean", bin.mean}});
            emit_report(json{{"a_hat", fit_slope(stats)},
                             {"resolution", stats.resolution},
                             {"samples", stats.samples},
                             {"ring_min", 2},
                             {"ring_max", stats.resolution / 4},
                             {"profile", profile}},
                        slope_out);
            return 0;
        }

        if (analyze_filters->parsed()) {
            echo_config(json{{"subcommand", "analyze-filters"},
                             {"weights", filters_dir},
                             {"out", filters_out}});
            std::vector<fs::path> files;
            std::error_code ec;
            for (const auto& entry : fs::directory_iterator(filters_dir, ec))
                if (entry.is_regular_file()) files.push_back(entry.path());
            if (ec) throw io_error("cannot read directory " + filters_dir);
            std::sort(files.begin(), files.end());

            const SimilarityReport report = model_report(files);
            json layers = json::array();
            for (const LayerReport& layer : report.layers) {
                json entry{{"file", layer.file}, {"ok", layer.ok}};
                if (layer.ok) {
                    entry["mean_cosine"] = layer.similarity.mean_cosine;
                    entry["filters_used"] = layer.similarity.used;
                    entry["filters_excluded"] = layer.similarity.excluded;
                } else {
                    entry["error"] = layer.error;
                }
                layers.push_back(std::move(entry));
            }
            emit_report(json{{"layers", layers},
                             {"model_mean", report.model_mean},
                             {"layers_failed", report.failed}},
                        filters_out);
            return report.failed == 0 ? 0 : 1;
        }

        if (render_spectrum->parsed()) {
            echo_config(json{{"subcommand", "render-spectrum"},
                             {"dataset", render_dataset},
                             {"out", render_out},
                             {"workers", render_workers}});
            const SpectrumStats stats = dataset_spectrum(render_dataset, render_workers);
            write_png_gray8(render_out, stats.resolution, stats.resolution,
                            spectrum_to_gray8(stats));
            std::cout << "wrote " << render_out << "\n";
            return 0;
        }
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
