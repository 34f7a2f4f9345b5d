#include "gkm/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gkm {

double psnr(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("psnr: dim mismatch");
    double mse = 0.0;
    for (size_t p = 0; p < a.data.size(); ++p) {
        double d = a.data[p] - b.data[p];
        mse += d * d;
    }
    mse /= static_cast<double>(a.data.size());
    if (mse <= 0.0) return 100.0;
    return std::min(100.0, 10.0 * std::log10(1.0 / mse));
}

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

std::vector<double> window_taps() {
    std::vector<double> t(kWindow);
    double sum = 0.0;
    const int r = kWindow / 2;
    for (int d = -r; d <= r; ++d) {
        t[d + r] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
        sum += t[d + r];
    }
    for (double& v : t) v /= sum;
    return t;
}

// valid-mode separable windowed mean, output (h-10) x (w-10)
std::vector<double> windowed_mean(const std::vector<double>& src, int h, int w,
                                  const std::vector<double>& taps) {
    const int r = kWindow / 2;
    const int oh = h - 2 * r, ow = w - 2 * r;
    std::vector<double> tmp(static_cast<size_t>(h) * ow);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < ow; ++j) {
            double s = 0.0;
            for (int d = 0; d < kWindow; ++d)
                s += taps[d] * src[static_cast<size_t>(i) * w + j + d];
            tmp[static_cast<size_t>(i) * ow + j] = s;
        }
    std::vector<double> out(static_cast<size_t>(oh) * ow);
    for (int i = 0; i < oh; ++i)
        for (int j = 0; j < ow; ++j) {
            double s = 0.0;
            for (int d = 0; d < kWindow; ++d)
                s += taps[d] * tmp[static_cast<size_t>(i + d) * ow + j];
            out[static_cast<size_t>(i) * ow + j] = s;
        }
    return out;
}

}  // namespace

double ssim(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("ssim: dim mismatch");
    if (a.height < kWindow || a.width < kWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");
    const std::vector<double> taps = window_taps();
    const size_t n = a.plane_size();
    const int h = a.height, w = a.width;
    double total = 0.0;
    for (int c = 0; c < a.channels; ++c) {
        std::vector<double> x(a.plane(c), a.plane(c) + n);
        std::vector<double> y(b.plane(c), b.plane(c) + n);
        std::vector<double> xx(n), yy(n), xy(n);
        for (size_t p = 0; p < n; ++p) {
            xx[p] = x[p] * x[p];
            yy[p] = y[p] * y[p];
            xy[p] = x[p] * y[p];
        }
        auto mx = windowed_mean(x, h, w, taps);
        auto my = windowed_mean(y, h, w, taps);
        auto mxx = windowed_mean(xx, h, w, taps);
        auto myy = windowed_mean(yy, h, w, taps);
        auto mxy = windowed_mean(xy, h, w, taps);
        double acc = 0.0;
        for (size_t p = 0; p < mx.size(); ++p) {
            double vx = mxx[p] - mx[p] * mx[p];
            double vy = myy[p] - my[p] * my[p];
            double cov = mxy[p] - mx[p] * my[p];
            double num = (2.0 * mx[p] * my[p] + kC1) * (2.0 * cov + kC2);
            double den = (mx[p] * mx[p] + my[p] * my[p] + kC1) * (vx + vy + kC2);
            acc += num / den;
        }
        total += acc / static_cast<double>(mx.size());
    }
    return total / a.channels;
}

}  // namespace gkm
