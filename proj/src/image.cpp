#include "gkm/image.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace gkm {

namespace {
int g_threads = 1;
}

void set_thread_budget(int threads) { g_threads = std::max(1, threads); }
int thread_budget() { return g_threads; }

void parallel_rows(int n, const std::function<void(int)>& fn) {
    int nt = std::min(g_threads, n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

Image downsample2(const Image& img) {
    if (img.height < 2 || img.width < 2)
        throw std::invalid_argument("downsample2: image must be at least 2x2");
    const int oh = (img.height + 1) / 2;
    const int ow = (img.width + 1) / 2;
    Image out(img.channels, oh, ow);
    for (int c = 0; c < img.channels; ++c) {
        const double* src = img.plane(c);
        double* dst = out.plane(c);
        for (int i = 0; i < oh; ++i) {
            const int i0 = 2 * i;
            const int i1 = std::min(2 * i + 1, img.height - 1);
            for (int j = 0; j < ow; ++j) {
                const int j0 = 2 * j;
                const int j1 = std::min(2 * j + 1, img.width - 1);
                dst[static_cast<size_t>(i) * ow + j] =
                    0.25 * (src[static_cast<size_t>(i0) * img.width + j0] +
                            src[static_cast<size_t>(i0) * img.width + j1] +
                            src[static_cast<size_t>(i1) * img.width + j0] +
                            src[static_cast<size_t>(i1) * img.width + j1]);
            }
        }
    }
    return out;
}

namespace {

// Endpoint-aligned sample positions: output u maps to input u*(n-1)/(m-1).
void interp_axis(int n, int m, std::vector<int>& lo, std::vector<double>& frac) {
    lo.resize(m);
    frac.resize(m);
    for (int u = 0; u < m; ++u) {
        if (m == 1 || n == 1) {
            lo[u] = 0;
            frac[u] = 0.0;
            continue;
        }
        double pos = static_cast<double>(u) * (n - 1) / (m - 1);
        int l = std::min(static_cast<int>(pos), n - 2);
        lo[u] = l;
        frac[u] = pos - l;
    }
}

}  // namespace

Image upsample2(const Image& img, int target_h, int target_w) {
    if (target_h < 2 * img.height - 1 || target_h > 2 * img.height ||
        target_w < 2 * img.width - 1 || target_w > 2 * img.width)
        throw std::invalid_argument("upsample2: target dims outside {2n-1, 2n}");
    std::vector<int> ilo, jlo;
    std::vector<double> ifr, jfr;
    interp_axis(img.height, target_h, ilo, ifr);
    interp_axis(img.width, target_w, jlo, jfr);
    Image out(img.channels, target_h, target_w);
    for (int c = 0; c < img.channels; ++c) {
        const double* src = img.plane(c);
        double* dst = out.plane(c);
        for (int i = 0; i < target_h; ++i) {
            const int i0 = ilo[i];
            const int i1 = std::min(i0 + 1, img.height - 1);
            const double fi = ifr[i];
            for (int j = 0; j < target_w; ++j) {
                const int j0 = jlo[j];
                const int j1 = std::min(j0 + 1, img.width - 1);
                const double fj = jfr[j];
                const double a = src[static_cast<size_t>(i0) * img.width + j0];
                const double b = src[static_cast<size_t>(i0) * img.width + j1];
                const double cc = src[static_cast<size_t>(i1) * img.width + j0];
                const double d = src[static_cast<size_t>(i1) * img.width + j1];
                // v0 + f*(v1-v0) keeps constants exact
                const double top = a + fj * (b - a);
                const double bot = cc + fj * (d - cc);
                dst[static_cast<size_t>(i) * target_w + j] = top + fi * (bot - top);
            }
        }
    }
    return out;
}

Pyramid build_pyramid(const Image& img, int scales) {
    if (scales < 1) throw std::invalid_argument("build_pyramid: scales must be >= 1");
    Pyramid pyr;
    pyr.levels.resize(scales);
    pyr.levels[scales - 1] = img;
    for (int t = scales - 2; t >= 0; --t) {
        const Image& finer = pyr.levels[t + 1];
        if (finer.height < 2 || finer.width < 2)
            throw std::invalid_argument("build_pyramid: too many scales for image size");
        pyr.levels[t] = downsample2(finer);
    }
    if (pyr.levels[0].height < 2 || pyr.levels[0].width < 2)
        throw std::invalid_argument("build_pyramid: too many scales for image size");
    return pyr;
}

}  // namespace gkm
