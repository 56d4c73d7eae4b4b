#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "primgen/rng.hpp"
#include "primgen/shapes.hpp"

namespace primgen {

// Full recipe for one dataset. The defaults reproduce the final recipe:
// PrimitivesPS, N = 100, Decay sizes, a in [0.5, 3.5], resolution 256.
struct GeneratorConfig {
    Variant variant = Variant::PrimitivesPS;
    int resolution = 256;
    std::uint64_t count = 1;
    std::uint64_t seed = 0;
    int shapes = 100;
    SizePolicy size_policy = SizePolicy::decay();
    ExponentRange a_range;
    std::optional<int> label_count;
    NormalizeMode normalize = NormalizeMode::MinMax;
    SaliencyParams saliency;

    void validate() const;
    VariantParams variant_params() const;
};

std::string variant_name(Variant v);
Variant parse_variant(const std::string& name);
std::string size_policy_name(const SizePolicy& p);
SizePolicy parse_size_policy(const std::string& name);
std::string normalize_name(NormalizeMode m);
NormalizeMode parse_normalize(const std::string& name);

struct ImageRecord {
    std::string filename;
    std::uint64_t index = 0;
    std::optional<int> label;
    std::vector<double> exponents;
    int shape_count = 0;
    std::optional<PixelRect> saliency_box;
};

struct DatasetManifest {
    GeneratorConfig config;
    std::string tool_version;
    std::vector<ImageRecord> images;
};

// Uniform label in [0, K) drawn from the image's own stream (after the
// image draws, so pixels do not depend on whether labels are requested).
int assign_label(RandomStream& rng, int label_count);

// JSON with reals at 17 significant digits; byte-stable for a given
// manifest content.
std::string manifest_to_json(const DatasetManifest& manifest);

// Writes count PNGs named img_{index:08}.png plus manifest.json, which is
// written last as the completion marker. Output bytes are identical for
// any worker count. On failure nothing more is written and the partial
// directory is left for inspection.
DatasetManifest generate_dataset(const GeneratorConfig& config,
                                 const std::filesystem::path& out_dir, int workers);

}  // namespace primgen
