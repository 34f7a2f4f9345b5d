#include "gkm/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gkm/io.hpp"
#include "gkm/metrics.hpp"
#include "gkm/solver.hpp"

namespace gkm {

Image make_pattern(Pattern p, int height, int width, const std::string& import_path) {
    if (p == Pattern::import_png) {
        return read_png(import_path);
    }
    Image img(1, height, width);
    switch (p) {
        case Pattern::testcard: {
            const double cy = 0.3 * height, cx = 0.3 * width;
            for (int i = 0; i < height; ++i)
                for (int j = 0; j < width; ++j) {
                    // gradient base
                    double v = 0.2 + 0.6 * j / std::max(1, width - 1);
                    // concentric rings upper-left
                    double r = std::hypot(i - cy, j - cx);
                    if (r < 0.25 * std::min(height, width))
                        v = (static_cast<int>(r / 4.0) % 2 == 0) ? 0.9 : 0.1;
                    // frequency sweep bars along the bottom
                    if (i > 0.75 * height) {
                        double phase = 0.02 * j * j / width;
                        v = 0.5 + 0.45 * std::sin(2.0 * 3.14159265358979323846 * phase);
                    }
                    // solid square lower-right for flat-region behavior
                    if (i > 0.55 * height && i < 0.7 * height && j > 0.6 * width &&
                        j < 0.85 * width)
                        v = 0.75;
                    img.at(0, i, j) = v;
                }
            break;
        }
        case Pattern::checker:
            for (int i = 0; i < height; ++i)
                for (int j = 0; j < width; ++j)
                    img.at(0, i, j) = ((i / 8 + j / 8) % 2 == 0) ? 0.85 : 0.15;
            break;
        case Pattern::edges:
            for (int i = 0; i < height; ++i)
                for (int j = 0; j < width; ++j) {
                    double v = (j < width / 2) ? 0.25 : 0.75;
                    if (i > height / 2) v = 1.0 - v;
                    if (i + j > height + width - std::min(height, width) / 2) v = 0.5;
                    img.at(0, i, j) = v;
                }
            break;
        default:
            throw std::invalid_argument("make_pattern: bad pattern");
    }
    return img;
}

DefocusMap make_defocus_map(const SceneSpec& spec) {
    DefocusMap map;
    map.sigma = PlaneStack(1, spec.height, spec.width);
    for (int i = 0; i < spec.height; ++i)
        for (int j = 0; j < spec.width; ++j) {
            double s = 0.0;
            switch (spec.defocus) {
                case DefocusKind::constant:
                    s = spec.sigma;
                    break;
                case DefocusKind::ramp:
                    s = spec.sigma_lo + (spec.sigma_hi - spec.sigma_lo) * j /
                                            std::max(1, spec.width - 1);
                    break;
                case DefocusKind::two_plane: {
                    bool fg = i >= spec.height / 4 && i < 3 * spec.height / 4 &&
                              j >= spec.width / 4 && j < 3 * spec.width / 4;
                    s = fg ? spec.sigma_fg : spec.sigma_bg;
                    break;
                }
                case DefocusKind::radial: {
                    double r = std::hypot(i - 0.5 * (spec.height - 1),
                                          j - 0.5 * (spec.width - 1));
                    double rmax = std::hypot(0.5 * (spec.height - 1),
                                             0.5 * (spec.width - 1));
                    s = spec.sigma_hi * r / rmax;
                    break;
                }
            }
            map.sigma.at(0, i, j) = s;
        }
    return map;
}

Scene synth_scene(const SceneSpec& spec, const GaussianBasis& basis, BoundaryMode mode) {
    Scene scene;
    scene.clean = make_pattern(spec.pattern, spec.height, spec.width, spec.import_path);
    SceneSpec sized = spec;
    sized.height = scene.clean.height;
    sized.width = scene.clean.width;
    scene.defocus = make_defocus_map(sized);
    scene.coefficients = estimate_oracle(scene.defocus, basis);
    scene.blurred = apply_blur(scene.clean, scene.coefficients, basis, mode);
    if (spec.noise > 0.0) scene.blurred = add_noise(scene.blurred, spec.noise, spec.seed);
    return scene;
}

std::vector<SceneSpec> default_suite(const std::vector<double>& noises) {
    std::vector<SceneSpec> suite;
    for (double n : noises) {
        SceneSpec a;
        a.name = "constant1";
        a.defocus = DefocusKind::constant;
        a.sigma = 1.0;
        a.noise = n;
        suite.push_back(a);

        SceneSpec b;
        b.name = "twoplane";
        b.defocus = DefocusKind::two_plane;
        b.sigma_fg = 0.0;
        b.sigma_bg = 3.0;
        b.noise = n;
        suite.push_back(b);

        SceneSpec c;
        c.name = "ramp";
        c.defocus = DefocusKind::ramp;
        c.sigma_lo = 0.0;
        c.sigma_hi = 4.0;
        c.noise = n;
        suite.push_back(c);
    }
    return suite;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* pattern_name(Pattern p) {
    switch (p) {
        case Pattern::testcard: return "testcard";
        case Pattern::checker: return "checker";
        case Pattern::edges: return "edges";
        default: return "import";
    }
}

}  // namespace

std::string run_bench(const std::vector<SceneSpec>& suite, const GaussianBasis& basis,
                      const BenchOptions& opts) {
    if (suite.empty()) throw std::invalid_argument("run_bench: empty suite");
    namespace fs = std::filesystem;
    if (!opts.out_dir.empty()) fs::create_directories(opts.out_dir);

    std::ostringstream csv;
    csv << "scene,pattern,sigma_hat,method,psnr_blurred,psnr_out,ssim_blurred,"
           "ssim_out,seconds\n";
    for (const SceneSpec& spec : suite) {
        Scene scene = synth_scene(spec, basis, opts.config.boundary);
        const double psnr_blur = psnr(scene.blurred, scene.clean);
        const double ssim_blur = ssim(scene.blurred, scene.clean);
        GammaMaps gamma = derive_gamma(scene.coefficients);

        struct Result {
            std::string method;
            Image out;
            double seconds;
        };
        std::vector<Result> results;

        auto clock = [] { return std::chrono::steady_clock::now(); };
        {
            StopRule stop = opts.config.stop;
            stop.max_iter = opts.single_scale_iters;
            auto t0 = clock();
            auto [out, trace] = solve_single_scale(scene.blurred, gamma, basis,
                                                   opts.config.boundary, stop);
            double sec = std::chrono::duration<double>(clock() - t0).count();
            results.push_back({"single", std::move(out), sec});
        }
        {
            auto t0 = clock();
            ScaleCoefficients sc =
                downsample_coefficients(scene.coefficients, opts.config.scales);
            auto [out, traces] = solve_multiscale(scene.blurred, sc, basis, opts.config);
            double sec = std::chrono::duration<double>(clock() - t0).count();
            results.push_back({"multiscale", std::move(out), sec});
        }

        const std::string tag = spec.name + "_n" + fmt(spec.noise);
        if (!opts.out_dir.empty() && opts.write_images) {
            write_png(scene.clean, opts.out_dir + "/" + tag + "_clean.png");
            write_png(scene.blurred, opts.out_dir + "/" + tag + "_blurred.png");
        }
        for (const Result& r : results) {
            csv << spec.name << ',' << pattern_name(spec.pattern) << ','
                << fmt(spec.noise) << ',' << r.method << ',' << fmt(psnr_blur) << ','
                << fmt(psnr(r.out, scene.clean)) << ',' << fmt(ssim_blur) << ','
                << fmt(ssim(r.out, scene.clean)) << ','
                << fmt(r.seconds) << '\n';
            if (!opts.out_dir.empty() && opts.write_images)
                write_png(r.out, opts.out_dir + "/" + tag + "_" + r.method + ".png");
        }
    }
    const std::string report = csv.str();
    if (!opts.out_dir.empty()) {
        std::ofstream out(opts.out_dir + "/report.csv");
        out << report;
    }
    return report;
}

SceneSpec parse_scene_spec(const std::string& text) {
    SceneSpec spec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto eq = line.find('=');
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            s.erase(0, s.find_first_not_of(ws));
            auto end = s.find_last_not_of(ws);
            s.resize(end == std::string::npos ? 0 : end + 1);
            return s;
        };
        if (eq == std::string::npos) {
            if (!trim(line).empty())
                throw std::invalid_argument("scene spec: expected key=value, got " + line);
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("scene spec: empty key or value in " + line);
        if (key == "name") {
            spec.name = val;
        } else if (key == "pattern") {
            if (val == "testcard") spec.pattern = Pattern::testcard;
            else if (val == "checker") spec.pattern = Pattern::checker;
            else if (val == "edges") spec.pattern = Pattern::edges;
            else if (val.rfind("import:", 0) == 0) {
                spec.pattern = Pattern::import_png;
                spec.import_path = val.substr(7);
            } else throw std::invalid_argument("scene spec: unknown pattern " + val);
        } else if (key == "defocus") {
            if (val == "constant") spec.defocus = DefocusKind::constant;
            else if (val == "ramp") spec.defocus = DefocusKind::ramp;
            else if (val == "twoplane") spec.defocus = DefocusKind::two_plane;
            else if (val == "radial") spec.defocus = DefocusKind::radial;
            else throw std::invalid_argument("scene spec: unknown defocus " + val);
        } else if (key == "sigma") spec.sigma = std::stod(val);
        else if (key == "sigma_lo") spec.sigma_lo = std::stod(val);
        else if (key == "sigma_hi") spec.sigma_hi = std::stod(val);
        else if (key == "sigma_fg") spec.sigma_fg = std::stod(val);
        else if (key == "sigma_bg") spec.sigma_bg = std::stod(val);
        else if (key == "noise") spec.noise = std::stod(val);
        else if (key == "seed") spec.seed = std::stoull(val);
        else if (key == "dims") {
            auto x = val.find('x');
            if (x == std::string::npos)
                throw std::invalid_argument("scene spec: dims must be HxW");
            spec.height = std::stoi(val.substr(0, x));
            spec.width = std::stoi(val.substr(x + 1));
        } else {
            throw std::invalid_argument("scene spec: unknown key " + key);
        }
    }
    return spec;
}

}  // namespace gkm
