// Independent slow-path oracles used by the tests. These deliberately avoid
// the library's fast paths: direct window sums instead of separable filters,
// naive DFTs instead of spatial iteration.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gkm/image.hpp"
#include "gkm/kernel.hpp"

namespace oracle {

using cplx = std::complex<double>;

// naive 2D DFT, row transforms then column transforms
inline std::vector<cplx> dft2(const std::vector<double>& src, int h, int w) {
    const double twopi = 2.0 * 3.14159265358979323846;
    std::vector<cplx> rows(static_cast<size_t>(h) * w);
    for (int i = 0; i < h; ++i)
        for (int u = 0; u < w; ++u) {
            cplx s = 0.0;
            for (int j = 0; j < w; ++j)
                s += src[static_cast<size_t>(i) * w + j] *
                     std::polar(1.0, -twopi * u * j / w);
            rows[static_cast<size_t>(i) * w + u] = s;
        }
    std::vector<cplx> out(static_cast<size_t>(h) * w);
    for (int u = 0; u < w; ++u)
        for (int v = 0; v < h; ++v) {
            cplx s = 0.0;
            for (int i = 0; i < h; ++i)
                s += rows[static_cast<size_t>(i) * w + u] *
                     std::polar(1.0, -twopi * v * i / h);
            out[static_cast<size_t>(v) * w + u] = s;
        }
    return out;
}

inline std::vector<double> idft2(const std::vector<cplx>& src, int h, int w) {
    const double twopi = 2.0 * 3.14159265358979323846;
    std::vector<cplx> rows(static_cast<size_t>(h) * w);
    for (int v = 0; v < h; ++v)
        for (int j = 0; j < w; ++j) {
            cplx s = 0.0;
            for (int u = 0; u < w; ++u)
                s += src[static_cast<size_t>(v) * w + u] *
                     std::polar(1.0, twopi * u * j / w);
            rows[static_cast<size_t>(v) * w + j] = s / static_cast<double>(w);
        }
    std::vector<double> out(static_cast<size_t>(h) * w);
    for (int j = 0; j < w; ++j)
        for (int i = 0; i < h; ++i) {
            cplx s = 0.0;
            for (int v = 0; v < h; ++v)
                s += rows[static_cast<size_t>(v) * w + j] *
                     std::polar(1.0, twopi * v * i / h);
            out[static_cast<size_t>(i) * w + j] = s.real() / static_cast<double>(h);
        }
    return out;
}

// kernel embedded at the origin with wraparound, ready for circular transforms
inline std::vector<double> pad_kernel_circular(const gkm::Kernel2D& k, int h, int w) {
    std::vector<double> out(static_cast<size_t>(h) * w, 0.0);
    const int r = k.size / 2;
    for (int di = -r; di <= r; ++di)
        for (int dj = -r; dj <= r; ++dj) {
            int i = ((di % h) + h) % h;
            int j = ((dj % w) + w) % w;
            out[static_cast<size_t>(i) * w + j] += k.at(di + r, dj + r);
        }
    return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// reference PSNR, plain accumulation
inline double psnr_ref(const gkm::Image& a, const gkm::Image& b) {
    double mse = 0.0;
    for (size_t p = 0; p < a.data.size(); ++p) {
        double d = a.data[p] - b.data[p];
        mse += d * d;
    }
    mse /= static_cast<double>(a.data.size());
    if (mse <= 0.0) return 100.0;
    return std::min(100.0, 10.0 * std::log10(1.0 / mse));
}

// reference SSIM, direct per-window double loops
inline double ssim_ref(const gkm::Image& a, const gkm::Image& b) {
    const int win = 11, r = win / 2;
    const double sigma = 1.5, c1 = 1e-4, c2 = 9e-4;
    std::vector<double> taps(static_cast<size_t>(win) * win);
    double wsum = 0.0;
    for (int i = -r; i <= r; ++i)
        for (int j = -r; j <= r; ++j) {
            double v = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
            taps[static_cast<size_t>(i + r) * win + j + r] = v;
            wsum += v;
        }
    for (double& v : taps) v /= wsum;

    double total = 0.0;
    for (int c = 0; c < a.channels; ++c) {
        double acc = 0.0;
        int count = 0;
        for (int ci = r; ci < a.height - r; ++ci)
            for (int cj = r; cj < a.width - r; ++cj) {
                double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
                for (int di = -r; di <= r; ++di)
                    for (int dj = -r; dj <= r; ++dj) {
                        double wt = taps[static_cast<size_t>(di + r) * win + dj + r];
                        double x = a.at(c, ci + di, cj + dj);
                        double y = b.at(c, ci + di, cj + dj);
                        mx += wt * x;
                        my += wt * y;
                        mxx += wt * x * x;
                        myy += wt * y * y;
                        mxy += wt * x * y;
                    }
                double vx = mxx - mx * mx, vy = myy - my * my, cov = mxy - mx * my;
                acc += ((2 * mx * my + c1) * (2 * cov + c2)) /
                       ((mx * mx + my * my + c1) * (vx + vy + c2));
                ++count;
            }
        total += acc / count;
    }
    return total / a.channels;
}

inline gkm::Image random_image(int c, int h, int w, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    gkm::Image img(c, h, w);
    for (double& v : img.data) v = dist(rng);
    return img;
}

// random per-pixel simplex coefficient maps over K planes
inline gkm::PlaneStack random_simplex_maps(int k, int h, int w, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    gkm::PlaneStack maps(k, h, w);
    const size_t n = maps.plane_size();
    for (size_t p = 0; p < n; ++p) {
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            double v = dist(rng);
            maps.data[static_cast<size_t>(i) * n + p] = v;
            sum += v;
        }
        for (int i = 0; i < k; ++i) maps.data[static_cast<size_t>(i) * n + p] /= sum;
    }
    return maps;
}

}  // namespace oracle
