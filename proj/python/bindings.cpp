#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gkm/estimate.hpp"
#include "gkm/io.hpp"
#include "gkm/metrics.hpp"
#include "gkm/multiscale.hpp"
#include "gkm/solver.hpp"
#include "gkm/synth.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

gkm::Image to_image(const Array& arr) {
    auto buf = arr.request();
    gkm::Image img;
    if (buf.ndim == 2) {
        img = gkm::Image(1, static_cast<int>(buf.shape[0]), static_cast<int>(buf.shape[1]));
    } else if (buf.ndim == 3) {
        img = gkm::Image(static_cast<int>(buf.shape[0]), static_cast<int>(buf.shape[1]),
                         static_cast<int>(buf.shape[2]));
    } else {
        throw std::invalid_argument("expected a (H,W) or (C,H,W) array");
    }
    const double* src = static_cast<const double*>(buf.ptr);
    std::copy(src, src + img.data.size(), img.data.begin());
    return img;
}

py::array from_image(const gkm::Image& img) {
    if (img.channels == 1) {
        py::array_t<double> out({img.height, img.width});
        std::copy(img.data.begin(), img.data.end(), out.mutable_data());
        return out;
    }
    py::array_t<double> out({img.channels, img.height, img.width});
    std::copy(img.data.begin(), img.data.end(), out.mutable_data());
    return out;
}

gkm::PlaneStack to_stack(const Array& arr) {
    auto buf = arr.request();
    if (buf.ndim != 3) throw std::invalid_argument("expected a (K,H,W) array");
    gkm::PlaneStack stack(static_cast<int>(buf.shape[0]), static_cast<int>(buf.shape[1]),
                          static_cast<int>(buf.shape[2]));
    const double* src = static_cast<const double*>(buf.ptr);
    std::copy(src, src + stack.data.size(), stack.data.begin());
    return stack;
}

py::array from_stack(const gkm::PlaneStack& stack) {
    py::array_t<double> out({stack.planes, stack.height, stack.width});
    std::copy(stack.data.begin(), stack.data.end(), out.mutable_data());
    return out;
}

gkm::BoundaryMode boundary(const std::string& name) { return gkm::parse_boundary(name); }

gkm::CoefficientMaps coeffs_from(const Array& arr, bool simplex) {
    gkm::CoefficientMaps maps;
    maps.planes = to_stack(arr);
    maps.simplex = simplex;
    return maps;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gaussian kernel mixture defocus blur model and fixed-point deblurring";

    py::class_<gkm::GaussianBasis>(m, "GaussianBasis")
        .def_property_readonly("sigmas",
                               [](const gkm::GaussianBasis& b) { return b.sigmas; })
        .def_property_readonly("max_size",
                               [](const gkm::GaussianBasis& b) { return b.max_size; })
        .def("__len__", &gkm::GaussianBasis::size)
        .def("kernel", [](const gkm::GaussianBasis& b, int k) {
            const gkm::Kernel2D& ker = b.kernels.at(k);
            py::array_t<double> out({ker.size, ker.size});
            std::copy(ker.taps.begin(), ker.taps.end(), out.mutable_data());
            return out;
        });

    m.def("build_gcm_basis", &gkm::build_gcm_basis, py::arg("max_size") = 21);

    m.def("make_gaussian", [](int size, double sigma) {
        gkm::Kernel2D k = gkm::make_gaussian(size, sigma);
        py::array_t<double> out({k.size, k.size});
        std::copy(k.taps.begin(), k.taps.end(), out.mutable_data());
        return out;
    }, py::arg("size"), py::arg("sigma"));

    m.def("fit_psf", [](const Array& target, const gkm::GaussianBasis& basis, double tol,
                        int max_iter) {
        auto buf = target.request();
        if (buf.ndim != 2 || buf.shape[0] != buf.shape[1])
            throw std::invalid_argument("target must be a square 2D array");
        gkm::Kernel2D k;
        k.size = static_cast<int>(buf.shape[0]);
        k.taps.assign(static_cast<const double*>(buf.ptr),
                      static_cast<const double*>(buf.ptr) + k.size * k.size);
        gkm::PsfFit fit = gkm::fit_psf(k, basis, tol, max_iter);
        return py::make_tuple(fit.coefficients, fit.residual, fit.iterations);
    }, py::arg("target"), py::arg("basis"), py::arg("tol") = 1e-10,
       py::arg("max_iter") = 20000);

    m.def("downsample2", [](const Array& img) { return from_image(gkm::downsample2(to_image(img))); });
    m.def("upsample2", [](const Array& img, int th, int tw) {
        return from_image(gkm::upsample2(to_image(img), th, tw));
    });
    m.def("build_pyramid", [](const Array& img, int scales) {
        gkm::Pyramid pyr = gkm::build_pyramid(to_image(img), scales);
        py::list out;
        for (const auto& level : pyr.levels) out.append(from_image(level));
        return out;
    });

    m.def("apply_blur", [](const Array& x, const Array& beta,
                           const gkm::GaussianBasis& basis, const std::string& mode) {
        return from_image(gkm::apply_blur(to_image(x), coeffs_from(beta, false), basis,
                                          boundary(mode)));
    }, py::arg("x"), py::arg("beta"), py::arg("basis"), py::arg("boundary") = "replicate");

    m.def("apply_blur_adjoint", [](const Array& y, const Array& beta,
                                   const gkm::GaussianBasis& basis,
                                   const std::string& mode) {
        return from_image(gkm::apply_blur_adjoint(to_image(y), coeffs_from(beta, false),
                                                  basis, boundary(mode)));
    }, py::arg("y"), py::arg("beta"), py::arg("basis"), py::arg("boundary") = "replicate");

    m.def("add_noise", [](const Array& x, double sigma_hat, uint64_t seed) {
        return from_image(gkm::add_noise(to_image(x), sigma_hat, seed));
    }, py::arg("x"), py::arg("sigma_hat"), py::arg("seed") = 7);

    m.def("derive_gamma", [](const Array& beta) {
        return from_stack(gkm::derive_gamma(coeffs_from(beta, false)).planes);
    });

    m.def("solve_single_scale", [](const Array& y, const Array& gamma,
                                   const gkm::GaussianBasis& basis,
                                   const std::string& mode, int max_iter, double tol) {
        gkm::GammaMaps g;
        g.planes = to_stack(gamma);
        auto [out, trace] = gkm::solve_single_scale(to_image(y), g, basis, boundary(mode),
                                                    gkm::StopRule{max_iter, tol});
        return py::make_tuple(from_image(out), trace.residual_norms, trace.converged);
    }, py::arg("y"), py::arg("gamma"), py::arg("basis"),
       py::arg("boundary") = "replicate", py::arg("max_iter") = 50,
       py::arg("tol") = 1e-5);

    m.def("solve_multiscale", [](const Array& y, const Array& beta,
                                 const gkm::GaussianBasis& basis, int scales,
                                 int inner_iters, const std::string& mode, double tol) {
        gkm::SolverConfig config;
        config.scales = scales;
        config.inner_iters = inner_iters;
        config.boundary = boundary(mode);
        config.stop.rel_change_tol = tol;
        gkm::ScaleCoefficients sc =
            gkm::downsample_coefficients(coeffs_from(beta, true), scales);
        auto [out, traces] = gkm::solve_multiscale(to_image(y), sc, basis, config);
        return from_image(out);
    }, py::arg("y"), py::arg("beta"), py::arg("basis"), py::arg("scales") = 3,
       py::arg("inner_iters") = 1, py::arg("boundary") = "replicate",
       py::arg("tol") = 1e-5);

    m.def("estimate_oracle", [](const Array& sigma, const gkm::GaussianBasis& basis,
                                double q) {
        gkm::DefocusMap map;
        auto buf = sigma.request();
        if (buf.ndim != 2) throw std::invalid_argument("defocus map must be 2D");
        map.sigma = gkm::PlaneStack(1, static_cast<int>(buf.shape[0]),
                                    static_cast<int>(buf.shape[1]));
        const double* src = static_cast<const double*>(buf.ptr);
        std::copy(src, src + map.sigma.data.size(), map.sigma.data.begin());
        return from_stack(gkm::estimate_oracle(map, basis, q).planes);
    }, py::arg("sigma"), py::arg("basis"), py::arg("q") = 0.01);

    m.def("operator_norm", [](const Array& beta, const gkm::GaussianBasis& basis,
                              const std::string& mode, int height, int width, int iters,
                              uint64_t seed) {
        return gkm::operator_norm(coeffs_from(beta, false), basis, boundary(mode), height,
                                  width, iters, seed);
    }, py::arg("beta"), py::arg("basis"), py::arg("boundary") = "periodic",
       py::arg("height") = 64, py::arg("width") = 64, py::arg("iters") = 100,
       py::arg("seed") = 1);

    m.def("psnr", [](const Array& a, const Array& b) {
        return gkm::psnr(to_image(a), to_image(b));
    });
    m.def("ssim", [](const Array& a, const Array& b) {
        return gkm::ssim(to_image(a), to_image(b));
    });

    m.def("read_png", [](const std::string& path) { return from_image(gkm::read_png(path)); });
    m.def("write_png", [](const Array& img, const std::string& path, int bit_depth) {
        gkm::write_png(to_image(img), path, bit_depth);
    }, py::arg("img"), py::arg("path"), py::arg("bit_depth") = 16);
    m.def("read_planes", [](const std::string& path) { return from_stack(gkm::read_planes(path)); });
    m.def("write_planes", [](const Array& stack, const std::string& path) {
        gkm::write_planes(to_stack(stack), path);
    });

    m.def("make_pattern", [](const std::string& name, int height, int width) {
        gkm::Pattern p;
        if (name == "testcard") p = gkm::Pattern::testcard;
        else if (name == "checker") p = gkm::Pattern::checker;
        else if (name == "edges") p = gkm::Pattern::edges;
        else throw std::invalid_argument("unknown pattern " + name);
        return from_image(gkm::make_pattern(p, height, width));
    }, py::arg("name"), py::arg("height") = 128, py::arg("width") = 128);

    m.def("set_thread_budget", &gkm::set_thread_budget);
}
