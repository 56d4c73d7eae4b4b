#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace primgen {

// Rank-4 filter bank [O, I, h, w], row-major.
struct WeightTensor {
    std::array<std::uint32_t, 4> dims{};  // O, I, h, w
    std::vector<float> data;

    std::uint32_t filters() const { return dims[0]; }
    std::size_t filter_size() const {
        return static_cast<std::size_t>(dims[1]) * dims[2] * dims[3];
    }
};

// WT01 layer file: magic "WT01", little-endian u32 rank (= 4), four u32
// dims [O, I, h, w], then O*I*h*w IEEE-754 32-bit reals, row-major.
WeightTensor read_weight_tensor(const std::filesystem::path& path);
void write_weight_tensor(const std::filesystem::path& path, const WeightTensor& tensor);

struct FilterSimilarity {
    double mean_cosine = 0.0;
    std::uint32_t used = 0;      // filters entering the mean
    std::uint32_t excluded = 0;  // zero-norm filters dropped
};

// Mean cosine similarity over all unordered filter pairs. Filters with
// norm below 1e-12 are excluded; fewer than two survivors is an error.
FilterSimilarity filter_similarity(const WeightTensor& tensor);

struct LayerReport {
    std::string file;
    bool ok = false;
    FilterSimilarity similarity;  // valid when ok
    std::string error;            // set when !ok
};

struct SimilarityReport {
    std::vector<LayerReport> layers;
    double model_mean = 0.0;  // unweighted mean over successful layers
    std::uint32_t failed = 0;
};

// Per-layer similarity over an ordered list of WT01 files plus the
// unweighted model mean. Failing layers are marked and excluded.
SimilarityReport model_report(const std::vector<std::filesystem::path>& layer_files);

}  // namespace primgen
