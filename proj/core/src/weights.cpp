#include "primgen/weights.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "primgen/errors.hpp"

namespace primgen {

namespace {

constexpr char kMagic[4] = {'W', 'T', '0', '1'};

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void write_u32_le(std::ofstream& out, std::uint32_t v) {
    const unsigned char bytes[4] = {
        static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

}  // namespace

WeightTensor read_weight_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open weight tensor " + path.string());

    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw format_error(path.string() + ": bad magic at offset 0 (want WT01)");
    if (bytes.size() < 8)
        throw format_error(path.string() + ": truncated header at offset 4");

    const std::uint32_t rank = read_u32_le(bytes.data() + 4);
    if (rank != 4)
        throw format_error(path.string() + ": rank must be 4, got " + std::to_string(rank) +
                           " at offset 4");
    if (bytes.size() < 24)
        throw format_error(path.string() + ": truncated dims at offset 8");

    WeightTensor t;
    std::uint64_t elems = 1;
    for (int i = 0; i < 4; ++i) {
        t.dims[i] = read_u32_le(bytes.data() + 8 + 4 * i);
        elems *= t.dims[i];
        if (elems > std::numeric_limits<std::uint32_t>::max())
            throw format_error(path.string() + ": dims product overflows payload at offset " +
                               std::to_string(8 + 4 * i));
    }

    const std::uint64_t expected = 24 + elems * 4;
    if (bytes.size() != expected)
        throw format_error(path.string() + ": payload length mismatch at offset 24: expected " +
                           std::to_string(expected) + " bytes, file has " +
                           std::to_string(bytes.size()));

    t.data.resize(elems);
    static_assert(sizeof(float) == 4);
    std::memcpy(t.data.data(), bytes.data() + 24, elems * 4);
    return t;
}

void write_weight_tensor(const std::filesystem::path& path, const WeightTensor& tensor) {
    const std::uint64_t elems = static_cast<std::uint64_t>(tensor.dims[0]) * tensor.dims[1] *
                                tensor.dims[2] * tensor.dims[3];
    if (elems != tensor.data.size())
        throw format_error("tensor data size does not match dims");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write weight tensor " + path.string());
    out.write(kMagic, 4);
    write_u32_le(out, 4);
    for (std::uint32_t d : tensor.dims) write_u32_le(out, d);
    out.write(reinterpret_cast<const char*>(tensor.data.data()),
              static_cast<std::streamsize>(elems * 4));
    if (!out) throw io_error("failed writing " + path.string());
}

FilterSimilarity filter_similarity(const WeightTensor& tensor) {
    const std::uint32_t o = tensor.filters();
    if (o < 2) throw analysis_error("filter similarity needs O >= 2 filters");
    const std::size_t dim = tensor.filter_size();

    // Normalize once, then the pair loop is plain dot products.
    std::vector<std::vector<double>> unit;
    unit.reserve(o);
    std::uint32_t excluded = 0;
    for (std::uint32_t f = 0; f < o; ++f) {
        const float* src = tensor.data.data() + static_cast<std::size_t>(f) * dim;
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            norm_sq += static_cast<double>(src[i]) * src[i];
        const double norm = std::sqrt(norm_sq);
        if (norm < 1e-12) {
            ++excluded;
            continue;
        }
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = src[i] / norm;
        unit.push_back(std::move(v));
    }

    if (unit.size() < 2)
        throw analysis_error("filter similarity undefined: fewer than 2 nonzero filters (" +
                             std::to_string(excluded) + " excluded)");

    double total = 0.0;
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i + 1 < unit.size(); ++i) {
        for (std::size_t j = i + 1; j < unit.size(); ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += unit[i][k] * unit[j][k];
            total += dot;
            ++pairs;
        }
    }

    FilterSimilarity s;
    s.mean_cosine = total / static_cast<double>(pairs);
    s.used = static_cast<std::uint32_t>(unit.size());
    s.excluded = excluded;
    return s;
}

SimilarityReport model_report(const std::vector<std::filesystem::path>& layer_files) {
    if (layer_files.empty()) throw analysis_error("model report needs at least one layer file");

    SimilarityReport report;
    double sum = 0.0;
    std::uint32_t ok_count = 0;
    for (const auto& path : layer_files) {
        LayerReport layer;
        layer.file = path.filename().string();
        try {
            layer.similarity = filter_similarity(read_weight_tensor(path));
            layer.ok = true;
            sum += layer.similarity.mean_cosine;
            ++ok_count;
        } catch (const std::exception& e) {
            layer.ok = false;
            layer.error = e.what();
            ++report.failed;
        }
        report.layers.push_back(std::move(layer));
    }
    if (ok_count == 0) throw analysis_error("no layer produced a similarity value");
    report.model_mean = sum / static_cast<double>(ok_count);
    return report;
}

}  // namespace primgen
