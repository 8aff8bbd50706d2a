#include "hq/imageio.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace hq {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint8_t quantize(double v) {
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    return static_cast<std::uint8_t>(std::llround(v * 255.0));
}

// Skips whitespace and '#' comment lines, then parses one nonnegative int.
bool parse_pnm_int(const std::string& buf, std::size_t& pos, long& out) {
    while (pos < buf.size()) {
        const char c = buf[pos];
        if (c == '#') {
            while (pos < buf.size() && buf[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            break;
        }
    }
    if (pos >= buf.size() || !std::isdigit(static_cast<unsigned char>(buf[pos]))) return false;
    long v = 0;
    while (pos < buf.size() && std::isdigit(static_cast<unsigned char>(buf[pos]))) {
        v = v * 10 + (buf[pos] - '0');
        ++pos;
    }
    out = v;
    return true;
}

struct FileCloser {
    std::FILE* fp = nullptr;
    ~FileCloser() {
        if (fp) std::fclose(fp);
    }
};

struct PngReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadGuard() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriteGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteGuard() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

bool has_png_signature(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    unsigned char sig[8] = {};
    in.read(reinterpret_cast<char*>(sig), 8);
    return in.gcount() == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

ScalarField read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_pgm: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string buf = ss.str();

    if (buf.size() < 2 || buf[0] != 'P')
        throw std::runtime_error("read_pgm: '" + path + "' is not a PNM file");
    if (buf[1] == '6' || buf[1] == '3')
        throw std::runtime_error("read_pgm: '" + path +
                                 "' is a color PPM; convert it to grayscale first");
    if (buf[1] != '5')
        throw std::runtime_error("read_pgm: only binary P5 is supported");

    std::size_t pos = 2;
    long cols = 0, rows = 0, maxval = 0;
    if (!parse_pnm_int(buf, pos, cols) || !parse_pnm_int(buf, pos, rows) ||
        !parse_pnm_int(buf, pos, maxval))
        throw std::runtime_error("read_pgm: malformed header in '" + path + "'");
    if (maxval != 255)
        throw std::runtime_error("read_pgm: unsupported bit depth (maxval " +
                                 std::to_string(maxval) + "; only 8-bit maxval 255 is supported)");
    if (pos >= buf.size())
        throw std::runtime_error("read_pgm: truncated file '" + path + "'");
    ++pos;  // single whitespace after maxval

    const std::size_t need = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (buf.size() - pos < need)
        throw std::runtime_error("read_pgm: truncated pixel data in '" + path + "'");

    ScalarField f(static_cast<int>(rows), static_cast<int>(cols));
    for (std::size_t k = 0; k < need; ++k)
        f[k] = static_cast<unsigned char>(buf[pos + k]) / 255.0;
    return f;
}

void write_pgm(const std::string& path, const ScalarField& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open '" + path + "' for writing");
    out << "P5\n" << u.cols() << ' ' << u.rows() << "\n255\n";
    std::vector<std::uint8_t> row(u.cols());
    for (int i = 0; i < u.rows(); ++i) {
        for (int j = 0; j < u.cols(); ++j) row[j] = quantize(u(i, j));
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!out) throw std::runtime_error("write_pgm: write failed for '" + path + "'");
}

ScalarField read_png(const std::string& path) {
    FileCloser file{std::fopen(path.c_str(), "rb")};
    if (!file.fp) throw std::runtime_error("read_png: cannot open '" + path + "'");

    PngReadGuard g;
    g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw std::runtime_error("read_png: libpng init failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw std::runtime_error("read_png: libpng init failed");

    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(g.png)))
        throw std::runtime_error("read_png: failed to decode '" + path + "'");

    png_init_io(g.png, file.fp);
    png_read_info(g.png, g.info);

    const png_uint_32 w = png_get_image_width(g.png, g.info);
    const png_uint_32 h = png_get_image_height(g.png, g.info);
    const int depth = png_get_bit_depth(g.png, g.info);
    const int color = png_get_color_type(g.png, g.info);

    if (color != PNG_COLOR_TYPE_GRAY)
        throw std::runtime_error("read_png: '" + path +
                                 "' is not grayscale; convert it to 8-bit grayscale first");
    if (depth != 8)
        throw std::runtime_error("read_png: unsupported bit depth " + std::to_string(depth) +
                                 " (only 8-bit grayscale is supported)");

    pixels.resize(static_cast<std::size_t>(w) * h);
    rows.resize(h);
    for (png_uint_32 i = 0; i < h; ++i) rows[i] = pixels.data() + static_cast<std::size_t>(i) * w;
    png_read_image(g.png, rows.data());
    png_read_end(g.png, nullptr);

    ScalarField f(static_cast<int>(h), static_cast<int>(w));
    for (std::size_t k = 0; k < pixels.size(); ++k) f[k] = pixels[k] / 255.0;
    return f;
}

void write_png(const std::string& path, const ScalarField& u) {
    FileCloser file{std::fopen(path.c_str(), "wb")};
    if (!file.fp) throw std::runtime_error("write_png: cannot open '" + path + "' for writing");

    PngWriteGuard g;
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!g.png) throw std::runtime_error("write_png: libpng init failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw std::runtime_error("write_png: libpng init failed");

    std::vector<std::uint8_t> pixels(u.size());
    std::vector<png_bytep> rows(u.rows());
    if (setjmp(png_jmpbuf(g.png)))
        throw std::runtime_error("write_png: failed to encode '" + path + "'");

    png_init_io(g.png, file.fp);
    png_set_IHDR(g.png, g.info, u.cols(), u.rows(), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

    for (std::size_t k = 0; k < u.size(); ++k) pixels[k] = quantize(u[k]);
    for (int i = 0; i < u.rows(); ++i)
        rows[i] = pixels.data() + static_cast<std::size_t>(i) * u.cols();

    png_write_info(g.png, g.info);
    png_write_image(g.png, rows.data());
    png_write_end(g.png, nullptr);
}

ScalarField read_image(const std::string& path) {
    if (has_png_signature(path)) return read_png(path);
    return read_pgm(path);
}

void write_image(const std::string& path, const ScalarField& u) {
    if (ends_with(path, ".png") || ends_with(path, ".PNG")) {
        write_png(path, u);
    } else if (ends_with(path, ".pgm") || ends_with(path, ".PGM")) {
        write_pgm(path, u);
    } else {
        throw std::runtime_error("write_image: unsupported extension for '" + path +
                                 "' (use .pgm or .png)");
    }
}

ScalarField add_gaussian_noise(const ScalarField& u, const NoiseSpec& spec) {
    spec.validate();
    ScalarField out = u;
    if (spec.sigma == 0.0) return out;

    std::mt19937_64 rng(spec.seed);
    auto unit = [&rng]() {
        // top 53 bits mapped to (0,1]; never 0, so log is safe
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    };

    const std::size_t N = u.size();
    for (std::size_t k = 0; k < N; k += 2) {
        const double u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        out[k] += spec.sigma * (r * std::cos(2.0 * kPi * u2));
        if (k + 1 < N) out[k + 1] += spec.sigma * (r * std::sin(2.0 * kPi * u2));
    }
    return out;
}

}  // namespace hq
