#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "primgen/field.hpp"
#include "primgen/rng.hpp"
#include "primgen/spectrum.hpp"

namespace primgen {

enum class ShapeKind { Ellipse, Rectangle, Line };

struct Color {
    double r = 0.0, g = 0.0, b = 0.0;
};

enum class FillKind { Monotone, PinkTexture };

// A rasterizable primitive. For Line, size.x is the length and size.y the
// thickness; a line is rendered as a rotated thin rectangle.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::Ellipse;
    double cx = 0.0, cy = 0.0;       // center, pixels
    double sx = 1.0, sy = 1.0;       // full extents, pixels
    double orientation = 0.0;        // radians in [0, pi)
    FillKind fill = FillKind::Monotone;
    Color color;                     // used by Monotone fills
};

struct SizePolicy {
    enum class Kind { Fix, Rand, Decay };
    Kind kind = Kind::Decay;
    double fix_ratio = 0.2;  // extent as a fraction of H, Fix only

    static SizePolicy fix(double ratio) {
        if (!(ratio > 0.0) || ratio > 1.0)
            throw config_error("fix ratio must lie in (0, 1]");
        return {Kind::Fix, ratio};
    }
    static SizePolicy rand() { return {Kind::Rand, 0.0}; }
    static SizePolicy decay() { return {Kind::Decay, 0.0}; }
};

// Integer pixel rectangle, half-open [x0, x1) x [y0, y1).
struct PixelRect {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

struct SaliencyRecord {
    ShapeSpec shape;
    PixelRect bounding_box;
};

// Size cap of the Decay schedule for the shape about to be injected:
// H * (1/5) * ((N - n) / N). Non-increasing in n, cap(0) = H/5 exactly.
double decay_cap(int n, int total, int resolution);

// Draws one monotone primitive: kind uniform over the three kinds, center
// uniform over the canvas, orientation uniform over [0, pi), color uniform
// per channel. Size components per policy, clamped to >= 1 pixel.
ShapeSpec sample_shape(int n, int total, SizePolicy policy, int resolution,
                       RandomStream& rng);

// Hard-overwrites every pixel whose center satisfies the shape's analytic
// inequality. Monotone writes the shape color; PinkTexture copies the
// co-located pixel of `texture` (screen-space registration). Out-of-bounds
// portions clip. Returns the painted pixel count.
std::size_t rasterize(const ShapeSpec& shape, ImageBuffer& image,
                      const std::array<RealField, 3>* texture = nullptr);

// Clipped integer bounding box of the shape's analytic region.
PixelRect shape_bounds(const ShapeSpec& shape, int width, int height);

// Injects N shapes over an existing canvas, in order n = 0..N-1.
void inject_primitives(ImageBuffer& image, int count, SizePolicy policy, RandomStream& rng);

// Uniform random monotone background plus N injected shapes: the plain
// shape-composition variant.
ImageBuffer compose_primitives(int resolution, int count, SizePolicy policy,
                               RandomStream& rng);

// Sampling ranges for the salient shape, as fractions of the resolution.
struct SaliencyParams {
    double size_lo = 1.0 / 3.0;
    double size_hi = 2.0 / 3.0;
    double center_lo = 1.0 / 3.0;
    double center_hi = 2.0 / 3.0;
};

// Inserts one large near-center shape (Ellipse or Rectangle, never Line).
// Monotone when textured == false; filled with a fresh pink texture whose
// exponent is drawn from a_range when textured == true.
SaliencyRecord add_saliency(ImageBuffer& image, bool textured, RandomStream& rng,
                            const SaliencyParams& params = {},
                            const ExponentRange& a_range = {},
                            NormalizeMode normalize = NormalizeMode::MinMax,
                            double* a_out = nullptr);

enum class Variant { PinkNoise, Primitives, PrimitivesS, PrimitivesPS, PinkNoisePS };

struct VariantParams {
    int resolution = 256;
    int shape_count = 100;
    SizePolicy size_policy = SizePolicy::decay();
    ExponentRange a_range;
    NormalizeMode normalize = NormalizeMode::MinMax;
    SaliencyParams saliency;
};

struct VariantResult {
    ImageBuffer image;
    std::vector<double> exponents;  // in draw order (background first)
    int shape_count = 0;
    std::optional<SaliencyRecord> saliency;
};

// Dispatches one image synthesis. PinkNoisePS runs the PrimitivesPS
// pipeline with zero primitives.
VariantResult generate_variant(Variant variant, const VariantParams& params,
                               RandomStream& rng);

}  // namespace primgen
