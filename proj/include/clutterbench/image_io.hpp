#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "clutterbench/errors.hpp"
#include "clutterbench/image.hpp"

#if defined(CLUTTERBENCH_HAS_PNG)
#include <png.h>
#endif

namespace clutterbench {

// 8-bit binary PPM (P6). Round-trips 8-bit data exactly.
inline void write_ppm(const Image& img, const std::string& path) {
    require_space(img, ColorSpace::SRGB, 3, "write_ppm");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("write_ppm: cannot open " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::string buf;
    buf.reserve(img.pixel_count() * 3);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        for (int c = 0; c < 3; ++c) {
            double v = img.planes[static_cast<std::size_t>(c)][i];
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            buf.push_back(static_cast<char>(
                static_cast<std::uint8_t>(std::lround(v * 255.0))));
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw io_error("write_ppm: short write to " + path);
}

namespace detail {

inline int ppm_next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch)) {
        tok.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    return ch;
}

}  // namespace detail

inline Image read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("read_ppm: cannot open " + path);
    std::string tok;
    detail::ppm_next_token(in, tok);
    if (tok != "P6") throw parse_error("read_ppm: not a P6 file: " + path, 1);
    int w = 0, h = 0, maxval = 0;
    detail::ppm_next_token(in, tok);
    w = std::stoi(tok);
    detail::ppm_next_token(in, tok);
    h = std::stoi(tok);
    detail::ppm_next_token(in, tok);
    maxval = std::stoi(tok);
    if (w <= 0 || h <= 0) throw parse_error("read_ppm: bad dimensions in " + path, 1);
    if (maxval != 255) throw parse_error("read_ppm: only maxval 255 supported: " + path, 1);
    // one whitespace byte after maxval was already consumed by the tokenizer
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::string buf(n * 3, '\0');
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
        throw parse_error("read_ppm: truncated pixel data in " + path, 1);
    Image img(w, h, 3, ColorSpace::SRGB);
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c)
            img.planes[static_cast<std::size_t>(c)][i] =
                static_cast<std::uint8_t>(buf[i * 3 + c]) / 255.0;
    return img;
}

inline bool png_read_supported() {
#if defined(CLUTTERBENCH_HAS_PNG)
    return true;
#else
    return false;
#endif
}

#if defined(CLUTTERBENCH_HAS_PNG)
// 8-bit PNG read; anything libpng can expand to 8-bit RGB is accepted.
inline Image read_png(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw io_error("read_png: cannot open " + path);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw io_error("read_png: libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw parse_error("read_png: corrupt PNG: " + path, 1);
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * 3);
    Image img(w, h, 3, ColorSpace::SRGB);
    for (int y = 0; y < h; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c)
                img.at(c, x, y) = row[static_cast<std::size_t>(x) * 3 + c] / 255.0;
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}
#endif

inline bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Dispatch on extension: .ppm always, .png when built with libpng.
inline Image read_image(const std::string& path) {
    if (has_suffix(path, ".ppm")) return read_ppm(path);
#if defined(CLUTTERBENCH_HAS_PNG)
    if (has_suffix(path, ".png")) return read_png(path);
#else
    if (has_suffix(path, ".png"))
        throw invalid_input("read_image: PNG support not built in: " + path);
#endif
    throw invalid_input("read_image: unsupported image format: " + path);
}

}  // namespace clutterbench
