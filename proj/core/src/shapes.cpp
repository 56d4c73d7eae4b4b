#include "primgen/shapes.hpp"

#include <algorithm>
#include <cmath>

namespace primgen {

double decay_cap(int n, int total, int resolution) {
    return resolution * (1.0 / 5.0) * (static_cast<double>(total - n) / total);
}

ShapeSpec sample_shape(int n, int total, SizePolicy policy, int resolution,
                       RandomStream& rng) {
    ShapeSpec s;
    const double h = resolution;

    switch (rng.uniform_int(3)) {
        case 0: s.kind = ShapeKind::Ellipse; break;
        case 1: s.kind = ShapeKind::Rectangle; break;
        default: s.kind = ShapeKind::Line; break;
    }
    s.cx = rng.uniform(0.0, h);
    s.cy = rng.uniform(0.0, h);

    switch (policy.kind) {
        case SizePolicy::Kind::Fix:
            s.sx = s.sy = std::max(1.0, policy.fix_ratio * h);
            break;
        case SizePolicy::Kind::Rand:
            s.sx = rng.uniform(1.0, h / 5.0);
            s.sy = rng.uniform(1.0, h / 5.0);
            break;
        case SizePolicy::Kind::Decay: {
            const double cap = std::max(1.0, decay_cap(n, total, resolution));
            s.sx = rng.uniform(1.0, cap);
            s.sy = rng.uniform(1.0, cap);
            break;
        }
    }

    s.orientation = rng.uniform(0.0, M_PI);
    s.color = {rng.next_double(), rng.next_double(), rng.next_double()};
    s.fill = FillKind::Monotone;
    return s;
}

namespace {

struct ShapeFrame {
    double cos_t, sin_t;
    double hx, hy;  // canvas-space half extents of the bounding box
    double ax, ay;  // local half extents
};

ShapeFrame make_frame(const ShapeSpec& s) {
    ShapeFrame f;
    f.cos_t = std::cos(s.orientation);
    f.sin_t = std::sin(s.orientation);
    f.ax = s.sx * 0.5;
    f.ay = s.sy * 0.5;
    if (s.kind == ShapeKind::Ellipse) {
        f.hx = std::sqrt(f.ax * f.ax * f.cos_t * f.cos_t + f.ay * f.ay * f.sin_t * f.sin_t);
        f.hy = std::sqrt(f.ax * f.ax * f.sin_t * f.sin_t + f.ay * f.ay * f.cos_t * f.cos_t);
    } else {
        f.hx = std::abs(f.cos_t) * f.ax + std::abs(f.sin_t) * f.ay;
        f.hy = std::abs(f.sin_t) * f.ax + std::abs(f.cos_t) * f.ay;
    }
    return f;
}

inline bool inside(const ShapeSpec& s, const ShapeFrame& f, double px, double py) {
    const double dx = px - s.cx;
    const double dy = py - s.cy;
    const double u = f.cos_t * dx + f.sin_t * dy;
    const double v = -f.sin_t * dx + f.cos_t * dy;
    if (s.kind == ShapeKind::Ellipse) {
        const double eu = u / f.ax;
        const double ev = v / f.ay;
        return eu * eu + ev * ev <= 1.0;
    }
    return std::abs(u) <= f.ax && std::abs(v) <= f.ay;  // Rectangle and Line
}

}  // namespace

PixelRect shape_bounds(const ShapeSpec& shape, int width, int height) {
    const ShapeFrame f = make_frame(shape);
    PixelRect r;
    r.x0 = std::max(0, static_cast<int>(std::floor(shape.cx - f.hx)));
    r.y0 = std::max(0, static_cast<int>(std::floor(shape.cy - f.hy)));
    r.x1 = std::min(width, static_cast<int>(std::ceil(shape.cx + f.hx)));
    r.y1 = std::min(height, static_cast<int>(std::ceil(shape.cy + f.hy)));
    r.x1 = std::max(r.x0, r.x1);
    r.y1 = std::max(r.y0, r.y1);
    return r;
}

std::size_t rasterize(const ShapeSpec& shape, ImageBuffer& image,
                      const std::array<RealField, 3>* texture) {
    const ShapeFrame frame = make_frame(shape);
    const PixelRect box = shape_bounds(shape, image.width, image.height);

    std::size_t painted = 0;
    for (int y = box.y0; y < box.y1; ++y) {
        const double py = y + 0.5;
        for (int x = box.x0; x < box.x1; ++x) {
            if (!inside(shape, frame, x + 0.5, py)) continue;
            if (shape.fill == FillKind::Monotone) {
                image.at(x, y, 0) = shape.color.r;
                image.at(x, y, 1) = shape.color.g;
                image.at(x, y, 2) = shape.color.b;
            } else {
                image.at(x, y, 0) = (*texture)[0].at(x, y);
                image.at(x, y, 1) = (*texture)[1].at(x, y);
                image.at(x, y, 2) = (*texture)[2].at(x, y);
            }
            ++painted;
        }
    }
    return painted;
}

void inject_primitives(ImageBuffer& image, int count, SizePolicy policy, RandomStream& rng) {
    for (int n = 0; n < count; ++n) {
        const ShapeSpec s = sample_shape(n, count, policy, image.width, rng);
        rasterize(s, image);
    }
}

ImageBuffer compose_primitives(int resolution, int count, SizePolicy policy,
                               RandomStream& rng) {
    ImageBuffer img(resolution, resolution);
    const Color bg{rng.next_double(), rng.next_double(), rng.next_double()};
    for (int y = 0; y < resolution; ++y)
        for (int x = 0; x < resolution; ++x) {
            img.at(x, y, 0) = bg.r;
            img.at(x, y, 1) = bg.g;
            img.at(x, y, 2) = bg.b;
        }
    inject_primitives(img, count, policy, rng);
    return img;
}

SaliencyRecord add_saliency(ImageBuffer& image, bool textured, RandomStream& rng,
                            const SaliencyParams& params, const ExponentRange& a_range,
                            NormalizeMode normalize, double* a_out) {
    const double h = image.width;

    ShapeSpec s;
    s.kind = rng.uniform_int(2) == 0 ? ShapeKind::Ellipse : ShapeKind::Rectangle;
    s.cx = rng.uniform(params.center_lo * h, params.center_hi * h);
    s.cy = rng.uniform(params.center_lo * h, params.center_hi * h);
    s.sx = rng.uniform(params.size_lo * h, params.size_hi * h);
    s.sy = rng.uniform(params.size_lo * h, params.size_hi * h);
    s.orientation = rng.uniform(0.0, M_PI);

    if (textured) {
        s.fill = FillKind::PinkTexture;
        const double a = rng.uniform(a_range.lo, a_range.hi);
        if (a_out) *a_out = a;
        const auto texture = pink_noise_triple(image.width, SpectralExponent(a), rng, normalize);
        rasterize(s, image, &texture);
    } else {
        s.fill = FillKind::Monotone;
        s.color = {rng.next_double(), rng.next_double(), rng.next_double()};
        rasterize(s, image);
    }

    return {s, shape_bounds(s, image.width, image.height)};
}

VariantResult generate_variant(Variant variant, const VariantParams& p, RandomStream& rng) {
    VariantResult out;
    double a = 0.0;

    switch (variant) {
        case Variant::PinkNoise:
            out.image = pink_noise_image(p.resolution, p.a_range, rng, p.normalize, &a);
            out.exponents.push_back(a);
            break;

        case Variant::Primitives:
            out.image = compose_primitives(p.resolution, p.shape_count, p.size_policy, rng);
            out.shape_count = p.shape_count;
            break;

        case Variant::PrimitivesS: {
            out.image = compose_primitives(p.resolution, p.shape_count, p.size_policy, rng);
            out.shape_count = p.shape_count;
            out.saliency = add_saliency(out.image, false, rng, p.saliency);
            break;
        }

        case Variant::PrimitivesPS:
        case Variant::PinkNoisePS: {
            const int count = variant == Variant::PinkNoisePS ? 0 : p.shape_count;
            out.image = pink_noise_image(p.resolution, p.a_range, rng, p.normalize, &a);
            out.exponents.push_back(a);
            inject_primitives(out.image, count, p.size_policy, rng);
            out.shape_count = count;
            double salient_a = 0.0;
            out.saliency = add_saliency(out.image, true, rng, p.saliency, p.a_range,
                                        p.normalize, &salient_a);
            out.exponents.push_back(salient_a);
            break;
        }
    }
    return out;
}

}  // namespace primgen
