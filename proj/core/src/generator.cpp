#include "primgen/generator.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "primgen/parallel.hpp"
#include "primgen/png_io.hpp"
#include "primgen/version.hpp"

namespace primgen {

void GeneratorConfig::validate() const {
    if (!is_power_of_two(resolution)) throw config_error("resolution must be a power of two");
    if (resolution < 8 || resolution > 4096)
        throw config_error("resolution must lie in [8, 4096]");
    if (count < 1) throw config_error("count must be >= 1");
    if (shapes < 0) throw config_error("shapes must be >= 0");
    if (label_count && *label_count < 1) throw config_error("label count must be >= 1");
    if (!(a_range.lo > 0.0) || a_range.hi < a_range.lo)
        throw config_error("exponent range must satisfy 0 < a-min <= a-max");
    if (!(saliency.size_lo > 0.0) || saliency.size_hi < saliency.size_lo ||
        saliency.size_hi > 1.0)
        throw config_error("salient size range must satisfy 0 < lo <= hi <= 1");
    if (saliency.center_lo < 0.0 || saliency.center_hi < saliency.center_lo ||
        saliency.center_hi > 1.0)
        throw config_error("salient center range must satisfy 0 <= lo <= hi <= 1");
    if (size_policy.kind == SizePolicy::Kind::Fix &&
        (!(size_policy.fix_ratio > 0.0) || size_policy.fix_ratio > 1.0))
        throw config_error("fix ratio must lie in (0, 1]");
}

VariantParams GeneratorConfig::variant_params() const {
    VariantParams p;
    p.resolution = resolution;
    p.shape_count = shapes;
    p.size_policy = size_policy;
    p.a_range = a_range;
    p.normalize = normalize;
    p.saliency = saliency;
    return p;
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::PinkNoise: return "pink-noise";
        case Variant::Primitives: return "primitives";
        case Variant::PrimitivesS: return "primitives-s";
        case Variant::PrimitivesPS: return "primitives-ps";
        case Variant::PinkNoisePS: return "pinknoise-ps";
    }
    throw config_error("unknown variant");
}

Variant parse_variant(const std::string& name) {
    if (name == "pink-noise") return Variant::PinkNoise;
    if (name == "primitives") return Variant::Primitives;
    if (name == "primitives-s") return Variant::PrimitivesS;
    if (name == "primitives-ps") return Variant::PrimitivesPS;
    if (name == "pinknoise-ps") return Variant::PinkNoisePS;
    throw config_error("unknown variant: " + name);
}

std::string size_policy_name(const SizePolicy& p) {
    switch (p.kind) {
        case SizePolicy::Kind::Rand: return "rand";
        case SizePolicy::Kind::Decay: return "decay";
        case SizePolicy::Kind::Fix: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "fix:%.17g", p.fix_ratio);
            return buf;
        }
    }
    throw config_error("unknown size policy");
}

SizePolicy parse_size_policy(const std::string& name) {
    if (name == "rand") return SizePolicy::rand();
    if (name == "decay") return SizePolicy::decay();
    if (name.rfind("fix:", 0) == 0) {
        try {
            std::size_t used = 0;
            const double ratio = std::stod(name.substr(4), &used);
            if (used != name.size() - 4) throw config_error("bad fix ratio");
            return SizePolicy::fix(ratio);
        } catch (const config_error&) {
            throw;
        } catch (...) {
            throw config_error("bad size policy: " + name);
        }
    }
    throw config_error("unknown size policy: " + name + " (want fix:<r>, rand or decay)");
}

std::string normalize_name(NormalizeMode m) {
    return m == NormalizeMode::MinMax ? "minmax" : "stdclip3";
}

NormalizeMode parse_normalize(const std::string& name) {
    if (name == "minmax") return NormalizeMode::MinMax;
    if (name == "stdclip3") return NormalizeMode::StdClip3;
    throw config_error("unknown normalize mode: " + name);
}

int assign_label(RandomStream& rng, int label_count) {
    if (label_count < 1) throw config_error("label count must be >= 1");
    return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(label_count)));
}

namespace {

std::string image_filename(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "img_%08" PRIu64 ".png", index);
    return buf;
}

void append_real(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void append_quoted(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

}  // namespace

std::string manifest_to_json(const DatasetManifest& m) {
    std::string j;
    j.reserve(256 + m.images.size() * 160);

    j += "{\n  \"tool\": \"primgen\",\n  \"version\": ";
    append_quoted(j, m.tool_version);
    j += ",\n  \"config\": {\n";
    j += "    \"variant\": ";
    append_quoted(j, variant_name(m.config.variant));
    j += ",\n    \"resolution\": " + std::to_string(m.config.resolution);
    j += ",\n    \"count\": " + std::to_string(m.config.count);
    j += ",\n    \"seed\": " + std::to_string(m.config.seed);
    j += ",\n    \"shapes\": " + std::to_string(m.config.shapes);
    j += ",\n    \"size_policy\": ";
    append_quoted(j, size_policy_name(m.config.size_policy));
    j += ",\n    \"a_min\": ";
    append_real(j, m.config.a_range.lo);
    j += ",\n    \"a_max\": ";
    append_real(j, m.config.a_range.hi);
    j += ",\n    \"label_count\": ";
    j += m.config.label_count ? std::to_string(*m.config.label_count) : "null";
    j += ",\n    \"normalize\": ";
    append_quoted(j, normalize_name(m.config.normalize));
    j += ",\n    \"noise\": \"gaussian\"";
    j += ",\n    \"salient_size_min\": ";
    append_real(j, m.config.saliency.size_lo);
    j += ",\n    \"salient_size_max\": ";
    append_real(j, m.config.saliency.size_hi);
    j += ",\n    \"salient_center_min\": ";
    append_real(j, m.config.saliency.center_lo);
    j += ",\n    \"salient_center_max\": ";
    append_real(j, m.config.saliency.center_hi);
    j += "\n  },\n  \"images\": [\n";

    for (std::size_t i = 0; i < m.images.size(); ++i) {
        const ImageRecord& r = m.images[i];
        j += "    {\"file\": ";
        append_quoted(j, r.filename);
        j += ", \"index\": " + std::to_string(r.index);
        j += ", \"variant\": ";
        append_quoted(j, variant_name(m.config.variant));
        if (r.label) j += ", \"label\": " + std::to_string(*r.label);
        j += ", \"exponents\": [";
        for (std::size_t k = 0; k < r.exponents.size(); ++k) {
            if (k) j += ", ";
            append_real(j, r.exponents[k]);
        }
        j += "], \"shapes\": " + std::to_string(r.shape_count);
        if (r.saliency_box) {
            j += ", \"saliency\": {\"x0\": " + std::to_string(r.saliency_box->x0);
            j += ", \"y0\": " + std::to_string(r.saliency_box->y0);
            j += ", \"x1\": " + std::to_string(r.saliency_box->x1);
            j += ", \"y1\": " + std::to_string(r.saliency_box->y1) + "}";
        }
        j += i + 1 < m.images.size() ? "},\n" : "}\n";
    }
    j += "  ]\n}\n";
    return j;
}

DatasetManifest generate_dataset(const GeneratorConfig& config,
                                 const std::filesystem::path& out_dir, int workers) {
    config.validate();
    if (workers < 1) workers = 1;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output directory " + out_dir.string());

    DatasetManifest manifest;
    manifest.config = config;
    manifest.tool_version = kVersion;
    manifest.images.resize(config.count);

    const VariantParams params = config.variant_params();
    parallel_for(config.count, workers, [&](std::size_t i) {
        RandomStream rng = derive_stream(config.seed, i);
        VariantResult result = generate_variant(config.variant, params, rng);

        ImageRecord& rec = manifest.images[i];
        rec.filename = image_filename(i);
        rec.index = i;
        rec.exponents = std::move(result.exponents);
        rec.shape_count = result.shape_count;
        if (result.saliency) rec.saliency_box = result.saliency->bounding_box;
        if (config.label_count) rec.label = assign_label(rng, *config.label_count);

        write_png_rgb8(out_dir / rec.filename, result.image.width, result.image.height,
                       to_rgb8(result.image));
    });

    // Manifest last: its presence marks a complete dataset.
    const std::filesystem::path manifest_path = out_dir / "manifest.json";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw io_error("cannot write " + manifest_path.string());
    out << manifest_to_json(manifest);
    out.close();
    if (!out) throw io_error("failed writing " + manifest_path.string());

    return manifest;
}

}  // namespace primgen
