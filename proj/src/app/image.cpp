#include "quat/image.hpp"

#include "quat/errors.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace quat {

namespace {

struct Rgb {
    index_t width = 0, height = 0;
    std::vector<std::uint8_t> pixels;  // interleaved RGB, row-major
};

bool has_extension(const std::string& path, const char* ext) {
    const std::size_t n = std::strlen(ext);
    if (path.size() < n) return false;
    return std::equal(path.end() - static_cast<std::ptrdiff_t>(n), path.end(), ext,
                      [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == b; });
}

// Skips whitespace and '#' comments between PPM header tokens.
long ppm_token(std::istream& in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) throw FormatError("PPM: malformed header");
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > (1L << 24)) throw FormatError("PPM: header value too large");
        c = in.get();
    }
    return v;  // the single whitespace after maxval has been consumed
}

Rgb read_ppm(std::istream& in) {
    char magic[2] = {};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '6') throw FormatError("PPM: only binary P6 is supported");
    Rgb img;
    img.width = ppm_token(in);
    img.height = ppm_token(in);
    const long maxval = ppm_token(in);
    if (img.width < 1 || img.height < 1) throw FormatError("PPM: empty image");
    if (maxval != 255) throw FormatError("PPM: only maxval 255 is supported");
    img.pixels.resize(static_cast<std::size_t>(3 * img.width * img.height));
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) throw FormatError("PPM: truncated pixel data");
    return img;
}

Rgb read_png(const std::string& path) {
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) throw FormatError("PNG: " + std::string(png.message));
    png.format = PNG_FORMAT_RGB;
    Rgb img;
    img.width = png.width;
    img.height = png.height;
    img.pixels.resize(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, img.pixels.data(), 0, nullptr)) {
        png_image_free(&png);
        throw FormatError("PNG: " + std::string(png.message));
    }
    return img;
}

} // namespace

QMatrix load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    unsigned char sig[8] = {};
    in.read(reinterpret_cast<char*>(sig), 8);
    const std::streamsize got = in.gcount();

    Rgb img;
    if (got == 8 && png_sig_cmp(sig, 0, 8) == 0) {
        in.close();
        img = read_png(path);
    } else if (got >= 2 && sig[0] == 'P' && sig[1] == '6') {
        in.clear();
        in.seekg(0);
        img = read_ppm(in);
    } else {
        throw FormatError("unsupported image format: " + path);
    }

    QMatrix M(img.height, img.width);
    for (index_t i = 0; i < img.height; ++i)
        for (index_t j = 0; j < img.width; ++j)
            for (int c = 0; c < 3; ++c)
                M.at(c + 1, i, j) = img.pixels[static_cast<std::size_t>(3 * (i * img.width + j) + c)];
    return M;
}

void save_image(const QMatrix& M, const std::string& path) {
    if (M.rows() < 1 || M.cols() < 1) throw InvalidArgument("save_image: empty matrix");
    std::vector<std::uint8_t> px(static_cast<std::size_t>(3 * M.rows() * M.cols()));
    for (index_t i = 0; i < M.rows(); ++i)
        for (index_t j = 0; j < M.cols(); ++j)
            for (int c = 0; c < 3; ++c) {
                const double v = std::clamp(std::round(M.at(c + 1, i, j)), 0.0, 255.0);
                px[static_cast<std::size_t>(3 * (i * M.cols() + j) + c)] = static_cast<std::uint8_t>(v);
            }

    if (has_extension(path, ".ppm")) {
        std::ofstream out(path, std::ios::binary);
        out << "P6\n" << M.cols() << ' ' << M.rows() << "\n255\n";
        out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
        if (!out) throw Error("cannot write " + path);
        return;
    }

    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(M.cols());
    png.height = static_cast<png_uint_32>(M.rows());
    png.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.c_str(), 0, px.data(), 0, nullptr))
        throw Error("cannot write " + path + ": " + png.message);
}

double psnr(const QMatrix& approx, const QMatrix& truth) {
    if (approx.rows() != truth.rows() || approx.cols() != truth.cols())
        throw DimensionMismatch("psnr: image sizes differ");
    QMatrix diff = approx;
    diff -= truth;
    const double err2 = frobenius_norm_squared(diff);
    if (err2 == 0.0) return kPsnrCap;
    const double mn = static_cast<double>(truth.rows() * truth.cols());
    return 10.0 * std::log10(255.0 * 255.0 * mn / err2);
}

} // namespace quat
