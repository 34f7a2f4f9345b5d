#include "gkm/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace gkm {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

}  // namespace

Image read_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw io_error("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw io_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error("corrupt PNG: " + path);
    }

    png_init_io(png, fp.get());
    png_read_info(png, info);

    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if ((color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) ||
        (bit_depth != 8 && bit_depth != 16)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error("unsupported PNG layout (need 8/16-bit gray or RGB): " + path);
    }
    const int channels = (color_type == PNG_COLOR_TYPE_GRAY) ? 1 : 3;
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int w = static_cast<int>(png_get_image_width(png, info));

    if (bit_depth == 16) png_set_swap(png);  // file is big-endian
    png_read_update_info(png, info);

    const size_t row_bytes = png_get_rowbytes(png, info);
    std::vector<unsigned char> raw(row_bytes * h);
    std::vector<png_bytep> rows(h);
    for (int i = 0; i < h; ++i) rows[i] = raw.data() + row_bytes * i;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(channels, h, w);
    const double scale = 1.0 / ((1 << bit_depth) - 1);
    for (int i = 0; i < h; ++i) {
        if (bit_depth == 8) {
            const unsigned char* r = rows[i];
            for (int j = 0; j < w; ++j)
                for (int c = 0; c < channels; ++c)
                    img.at(c, i, j) = r[j * channels + c] * scale;
        } else {
            const uint16_t* r = reinterpret_cast<const uint16_t*>(rows[i]);
            for (int j = 0; j < w; ++j)
                for (int c = 0; c < channels; ++c)
                    img.at(c, i, j) = r[j * channels + c] * scale;
        }
    }
    return img;
}

void write_png(const Image& img, const std::string& path, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16)
        throw std::invalid_argument("write_png: bit depth must be 8 or 16");
    if (img.channels != 1 && img.channels != 3)
        throw std::invalid_argument("write_png: 1 or 3 channels only");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw io_error("cannot open " + path + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("PNG write failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width, img.height, bit_depth,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (bit_depth == 16) png_set_swap(png);

    const double maxval = (1 << bit_depth) - 1;
    const size_t row_elems = static_cast<size_t>(img.width) * img.channels;
    if (bit_depth == 8) {
        std::vector<unsigned char> row(row_elems);
        for (int i = 0; i < img.height; ++i) {
            for (int j = 0; j < img.width; ++j)
                for (int c = 0; c < img.channels; ++c) {
                    double v = std::clamp(img.at(c, i, j), 0.0, 1.0);
                    row[j * img.channels + c] =
                        static_cast<unsigned char>(std::floor(v * maxval + 0.5));
                }
            png_write_row(png, row.data());
        }
    } else {
        std::vector<uint16_t> row(row_elems);
        for (int i = 0; i < img.height; ++i) {
            for (int j = 0; j < img.width; ++j)
                for (int c = 0; c < img.channels; ++c) {
                    double v = std::clamp(img.at(c, i, j), 0.0, 1.0);
                    row[j * img.channels + c] =
                        static_cast<uint16_t>(std::floor(v * maxval + 0.5));
                }
            png_write_row(png, reinterpret_cast<png_bytep>(row.data()));
        }
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

namespace {

constexpr char kMagic[4] = {'G', 'K', 'M', 'F'};
constexpr uint32_t kVersion = 1;

uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void write_u32(std::ostream& out, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

PlaneStack read_planes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw io_error("bad GKMF magic in " + path);
    const uint32_t version = read_u32(in);
    if (version != kVersion)
        throw io_error("unsupported GKMF version " + std::to_string(version));
    const uint32_t k = read_u32(in);
    const uint32_t h = read_u32(in);
    const uint32_t w = read_u32(in);
    if (!in || k == 0 || h == 0 || w == 0) throw io_error("bad GKMF header in " + path);

    PlaneStack stack(static_cast<int>(k), static_cast<int>(h), static_cast<int>(w));
    const size_t n = stack.data.size();
    std::vector<float> buf(n);
    static_assert(sizeof(float) == 4);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * 4));
    if (static_cast<size_t>(in.gcount()) != n * 4)
        throw io_error("truncated GKMF payload in " + path);
    for (size_t i = 0; i < n; ++i) stack.data[i] = buf[i];
    return stack;
}

void write_planes(const PlaneStack& stack, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out.write(kMagic, 4);
    write_u32(out, kVersion);
    write_u32(out, static_cast<uint32_t>(stack.planes));
    write_u32(out, static_cast<uint32_t>(stack.height));
    write_u32(out, static_cast<uint32_t>(stack.width));
    std::vector<float> buf(stack.data.size());
    for (size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<float>(stack.data[i]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * 4));
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace gkm
