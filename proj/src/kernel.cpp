#include "gkm/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace gkm {

std::vector<double> gaussian_taps_1d(int size, double sigma) {
    if (size < 1 || size % 2 == 0)
        throw std::invalid_argument("gaussian taps: size must be odd and positive");
    if (sigma < 0.0) throw std::invalid_argument("gaussian taps: sigma must be >= 0");
    if (sigma == 0.0) {
        if (size != 1) throw std::invalid_argument("gaussian taps: sigma 0 requires size 1");
        return {1.0};
    }
    const int r = size / 2;
    std::vector<double> taps(size);
    double sum = 0.0;
    for (int d = -r; d <= r; ++d) {
        double v = std::exp(-static_cast<double>(d) * d / (2.0 * sigma * sigma));
        taps[d + r] = v;
        sum += v;
    }
    for (double& t : taps) t /= sum;
    return taps;
}

Kernel2D make_gaussian(int size, double sigma) {
    const std::vector<double> t = gaussian_taps_1d(size, sigma);
    Kernel2D k;
    k.size = size;
    k.taps.resize(static_cast<size_t>(size) * size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) k.at(i, j) = t[i] * t[j];
    return k;
}

GaussianBasis build_gcm_basis(int max_size) {
    if (max_size < 3 || max_size % 2 == 0)
        throw std::invalid_argument("gcm basis: max size must be odd and >= 3");
    GaussianBasis basis;
    basis.max_size = max_size;
    basis.sigmas.push_back(0.0);
    basis.kernels.push_back(make_gaussian(1, 0.0));
    basis.taps1d.push_back({1.0});
    for (int m = 3; m <= max_size; m += 2) {
        for (double sigma : {(m - 2) / 4.0, (m - 1) / 4.0}) {
            basis.sigmas.push_back(sigma);
            basis.kernels.push_back(make_gaussian(m, sigma));
            basis.taps1d.push_back(gaussian_taps_1d(m, sigma));
        }
    }
    return basis;
}

Kernel2D make_pillbox(int radius) {
    if (radius < 0) throw std::invalid_argument("pillbox: radius must be >= 0");
    Kernel2D k;
    k.size = 2 * radius + 1;
    k.taps.assign(static_cast<size_t>(k.size) * k.size, 0.0);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i)
        for (int j = -radius; j <= radius; ++j)
            if (i * i + j * j <= radius * radius) {
                k.at(i + radius, j + radius) = 1.0;
                sum += 1.0;
            }
    for (double& t : k.taps) t /= sum;
    return k;
}

Kernel2D pad_kernel(const Kernel2D& k, int size) {
    if (size < k.size || size % 2 == 0)
        throw std::invalid_argument("pad_kernel: bad target support");
    if (size == k.size) return k;
    Kernel2D out;
    out.size = size;
    out.taps.assign(static_cast<size_t>(size) * size, 0.0);
    const int off = (size - k.size) / 2;
    for (int i = 0; i < k.size; ++i)
        for (int j = 0; j < k.size; ++j) out.at(i + off, j + off) = k.at(i, j);
    return out;
}

}  // namespace gkm
