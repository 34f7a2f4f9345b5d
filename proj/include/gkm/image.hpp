#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gkm {

/// Planar multi-channel raster. Samples are row-major within each channel,
/// channels stored back to back. Nominal range is [0,1] but values outside
/// it are allowed (noise is added without clipping).
struct Image {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<double> data;

    Image() = default;
    Image(int c, int h, int w, double fill = 0.0)
        : channels(c), height(h), width(w),
          data(static_cast<size_t>(c) * h * w, fill) {}

    double& at(int c, int i, int j) {
        return data[(static_cast<size_t>(c) * height + i) * width + j];
    }
    double at(int c, int i, int j) const {
        return data[(static_cast<size_t>(c) * height + i) * width + j];
    }
    double* plane(int c) { return data.data() + static_cast<size_t>(c) * height * width; }
    const double* plane(int c) const {
        return data.data() + static_cast<size_t>(c) * height * width;
    }
    size_t plane_size() const { return static_cast<size_t>(height) * width; }
    bool same_shape(const Image& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }
};

/// K single-channel planes sharing one spatial grid (basis responses,
/// coefficient maps, defocus maps).
struct PlaneStack {
    int planes = 0;
    int height = 0;
    int width = 0;
    std::vector<double> data;

    PlaneStack() = default;
    PlaneStack(int k, int h, int w, double fill = 0.0)
        : planes(k), height(h), width(w),
          data(static_cast<size_t>(k) * h * w, fill) {}

    double& at(int k, int i, int j) {
        return data[(static_cast<size_t>(k) * height + i) * width + j];
    }
    double at(int k, int i, int j) const {
        return data[(static_cast<size_t>(k) * height + i) * width + j];
    }
    double* plane(int k) { return data.data() + static_cast<size_t>(k) * height * width; }
    const double* plane(int k) const {
        return data.data() + static_cast<size_t>(k) * height * width;
    }
    size_t plane_size() const { return static_cast<size_t>(height) * width; }
};

/// Coarse-to-fine image stack, factor 2 between levels, coarsest first.
struct Pyramid {
    std::vector<Image> levels;

    int scales() const { return static_cast<int>(levels.size()); }
    const Image& finest() const { return levels.back(); }
};

/// Bilinear 2x2 average with border replication at odd edges.
/// Output dims are ceil(H/2) x ceil(W/2).
Image downsample2(const Image& img);

/// Bilinear interpolation to exactly (target_h, target_w), endpoints aligned.
/// Targets must lie in {2H-1, 2H} x {2W-1, 2W}.
Image upsample2(const Image& img, int target_h, int target_w);

/// T levels, coarsest first; finest level is the input bit-exactly.
Pyramid build_pyramid(const Image& img, int scales);

/// Thread budget for row-parallel filtering. Never changes results.
void set_thread_budget(int threads);
int thread_budget();

/// Runs fn(i) for i in [0, n), split across the thread budget.
void parallel_rows(int n, const std::function<void(int)>& fn);

}  // namespace gkm
