#include "primgen/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "primgen/fft.hpp"
#include "primgen/parallel.hpp"
#include "primgen/png_io.hpp"

namespace primgen {

SpectrumAccumulator::SpectrumAccumulator(int resolution, bool log_magnitude)
    : resolution_(resolution), log_magnitude_(log_magnitude) {
    check_field_size(resolution, resolution);
    sum_.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);
}

void SpectrumAccumulator::add_rgb8(const std::uint8_t* data, int width, int height,
                                   int channels) {
    if (width != resolution_ || height != resolution_)
        throw analysis_error("image resolution mismatch");
    const int n = resolution_;
    const int half = n / 2;

    RealField chan(n, n);
    for (int c = 0; c < channels; ++c) {
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                chan.at(x, y) =
                    static_cast<double>(data[(static_cast<std::size_t>(y) * n + x) * channels + c]);

        const ComplexField spec = forward_fft2(chan);
        // fftshift while accumulating: centered index = (bin + H/2) mod H.
        const double weight = channels == 1 ? 3.0 : 1.0;
        for (int y = 0; y < n; ++y) {
            const int cy = (y + half) % n;
            for (int x = 0; x < n; ++x) {
                const int cx = (x + half) % n;
                const double mag = std::abs(spec.at(x, y));
                sum_[static_cast<std::size_t>(cy) * n + cx] +=
                    weight * (log_magnitude_ ? std::log1p(mag) : mag);
            }
        }
    }
    ++samples_;
}

void SpectrumAccumulator::add(const ImageBuffer& image) {
    const std::vector<std::uint8_t> rgb = to_rgb8(image);
    add_rgb8(rgb.data(), image.width, image.height, 3);
}

void SpectrumAccumulator::merge(const SpectrumAccumulator& other) {
    if (other.resolution_ != resolution_ || other.log_magnitude_ != log_magnitude_)
        throw analysis_error("cannot merge mismatched spectrum accumulators");
    for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += other.sum_[i];
    samples_ += other.samples_;
}

SpectrumStats SpectrumAccumulator::finalize() const {
    if (samples_ == 0) throw analysis_error("empty dataset: no images accumulated");

    SpectrumStats stats;
    stats.resolution = resolution_;
    stats.log_magnitude = log_magnitude_;
    stats.samples = samples_;
    stats.mean_magnitude = RealField(resolution_, resolution_);
    const double inv = 1.0 / (3.0 * static_cast<double>(samples_));
    for (std::size_t i = 0; i < sum_.size(); ++i) stats.mean_magnitude.data[i] = sum_[i] * inv;

    // Ring means over integer radii 1 .. H/2-1 (nearest-integer binning).
    const int n = resolution_;
    const int half = n / 2;
    std::vector<double> ring_sum(half, 0.0);
    std::vector<std::uint64_t> ring_count(half, 0);
    for (int y = 0; y < n; ++y) {
        const double fy = y - half;  // centered layout
        for (int x = 0; x < n; ++x) {
            const double fx = x - half;
            const int ring = static_cast<int>(std::lround(std::sqrt(fx * fx + fy * fy)));
            if (ring < 1 || ring >= half) continue;
            ring_sum[ring] += stats.mean_magnitude.at(x, y);
            ++ring_count[ring];
        }
    }
    stats.profile.reserve(half - 1);
    for (int k = 1; k < half; ++k)
        stats.profile.push_back({k, ring_sum[k] / static_cast<double>(ring_count[k])});
    return stats;
}

SpectrumStats dataset_spectrum(const std::filesystem::path& dir, int workers,
                               bool log_magnitude) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            files.push_back(entry.path());
    }
    if (ec) throw io_error("cannot read directory " + dir.string());
    if (files.empty()) throw analysis_error("empty dataset: no .png files in " + dir.string());
    std::sort(files.begin(), files.end());

    // Probe the first file for the dataset resolution.
    const Png8 first = read_png(files.front());
    if (first.width != first.height || !is_power_of_two(first.width) || first.width < 8)
        throw analysis_error("image must be square with power-of-two side >= 8: " +
                             files.front().string());
    const int resolution = first.width;

    if (workers < 1) workers = 1;
    std::vector<SpectrumAccumulator> partials(
        std::min<std::size_t>(workers, files.size()),
        SpectrumAccumulator(resolution, log_magnitude));

    const std::size_t chunks = partials.size();
    parallel_for(chunks, static_cast<int>(chunks), [&](std::size_t t) {
        // Static partition so each file lands in a fixed accumulator.
        const std::size_t lo = files.size() * t / chunks;
        const std::size_t hi = files.size() * (t + 1) / chunks;
        for (std::size_t i = lo; i < hi; ++i) {
            const Png8 png = read_png(files[i]);
            if (png.width != resolution || png.height != resolution)
                throw analysis_error("resolution mismatch in dataset: " + files[i].string());
            partials[t].add_rgb8(png.data.data(), png.width, png.height, png.channels);
        }
    });

    for (std::size_t t = 1; t < partials.size(); ++t) partials[0].merge(partials[t]);
    return partials[0].finalize();
}

double fit_slope(const SpectrumStats& stats) {
    const int lo = 2;
    const int hi = stats.resolution / 4;

    std::vector<double> xs, ys;
    for (const RadialBin& bin : stats.profile) {
        if (bin.freq < lo || bin.freq > hi) continue;
        xs.push_back(std::log(static_cast<double>(bin.freq)));
        ys.push_back(bin.mean);
    }
    if (xs.size() < 4)
        throw analysis_error("fewer than 4 usable rings in [2, H/4] for the slope fit");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return -(sxy / sxx);
}

double ssim_uniform(const RealField& a, const RealField& b, int window) {
    if (a.width != b.width || a.height != b.height)
        throw analysis_error("ssim inputs must share a resolution");

    double mn = a.data[0], mx = a.data[0];
    for (double v : a.data) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    for (double v : b.data) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    const double range = mx - mn;
    if (range == 0.0) return 1.0;  // both fields are one identical constant

    const double c1 = (0.01 * range) * (0.01 * range);
    const double c2 = (0.03 * range) * (0.03 * range);
    const int n = a.width;
    const int m = window;
    const double inv_w = 1.0 / (m * m);

    double total = 0.0;
    std::uint64_t windows = 0;
    for (int y0 = 0; y0 + m <= n; ++y0) {
        for (int x0 = 0; x0 + m <= n; ++x0) {
            double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
            for (int dy = 0; dy < m; ++dy) {
                for (int dx = 0; dx < m; ++dx) {
                    const double va = a.at(x0 + dx, y0 + dy);
                    const double vb = b.at(x0 + dx, y0 + dy);
                    sa += va;
                    sb += vb;
                    saa += va * va;
                    sbb += vb * vb;
                    sab += va * vb;
                }
            }
            const double ma = sa * inv_w;
            const double mb = sb * inv_w;
            const double va = saa * inv_w - ma * ma;
            const double vb = sbb * inv_w - mb * mb;
            const double cov = sab * inv_w - ma * mb;
            total += ((2 * ma * mb + c1) * (2 * cov + c2)) /
                     ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

SpectrumDistance spectrum_distance(const SpectrumStats& a, const SpectrumStats& b) {
    if (a.resolution != b.resolution)
        throw analysis_error("spectrum resolution mismatch: " + std::to_string(a.resolution) +
                             " vs " + std::to_string(b.resolution));

    SpectrumDistance d;
    d.ssim = ssim_uniform(a.mean_magnitude, b.mean_magnitude);

    double abs_sum = 0.0, sq_sum = 0.0;
    const std::size_t n = a.mean_magnitude.data.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = a.mean_magnitude.data[i] - b.mean_magnitude.data[i];
        abs_sum += std::abs(diff);
        sq_sum += diff * diff;
    }
    d.l1 = abs_sum / static_cast<double>(n);
    d.l2 = std::sqrt(sq_sum / static_cast<double>(n));
    return d;
}

std::vector<std::uint8_t> spectrum_to_gray8(const SpectrumStats& stats) {
    const auto [mn_it, mx_it] = std::minmax_element(stats.mean_magnitude.data.begin(),
                                                    stats.mean_magnitude.data.end());
    const double mn = *mn_it;
    const double range = *mx_it - mn;
    const double inv = range > 0.0 ? 1.0 / range : 0.0;

    std::vector<std::uint8_t> out(stats.mean_magnitude.data.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = quantize8((stats.mean_magnitude.data[i] - mn) * inv);
    return out;
}

}  // namespace primgen
