#include <doctest.h>

#include <png.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hq/imageio.hpp"
#include "oracles.hpp"

using namespace hq;

namespace {
std::mt19937_64 rng(2025);

std::filesystem::path tmp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(bytes.data(), bytes.size());
}
}  // namespace

TEST_CASE("p5 byte-level decoding") {
    const auto p = tmp_path("hq_t_p5.pgm");
    write_bytes(p, std::string("P5\n2 2\n255\n") + '\x00' + '\xff' + '\x80' + '\x40');
    const ScalarField f = read_pgm(p.string());
    CHECK(f.rows() == 2);
    CHECK(f.cols() == 2);
    CHECK(f(0, 0) == 0.0);
    CHECK(f(0, 1) == 1.0);
    CHECK(f(1, 0) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
    CHECK(f(1, 1) == doctest::Approx(64.0 / 255.0).epsilon(1e-15));
}

TEST_CASE("pgm writer emits the exact header") {
    const auto p = tmp_path("hq_t_hdr.pgm");
    write_pgm(p.string(), ScalarField(4, 5, 0.5));
    std::ifstream in(p, std::ios::binary);
    std::string head(11, '\0');
    in.read(head.data(), 11);
    CHECK(head == "P5\n5 4\n255\n");
}

TEST_CASE("write/read roundtrip is the 8-bit quantization fixed point") {
    const ScalarField u = oracle::random_field(rng, 7, 9, -0.1, 1.1);
    for (const char* ext : {"pgm", "png"}) {
        const auto p = tmp_path(std::string("hq_t_rt.") + ext);
        write_image(p.string(), u);
        const ScalarField r1 = read_image(p.string());
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double c = u[k] < 0 ? 0.0 : (u[k] > 1 ? 1.0 : u[k]);
            CHECK(r1[k] == doctest::Approx(std::llround(c * 255.0) / 255.0).epsilon(1e-15));
        }
        write_image(p.string(), r1);
        CHECK(read_image(p.string()) == r1);  // quantized data is a fixed point
    }
}

TEST_CASE("rounding is half away from zero") {
    ScalarField u(2, 2, 0.0);
    u(0, 0) = 0.5 / 255.0;    // rounds up to 1
    u(0, 1) = 0.49 / 255.0;   // rounds down to 0
    const auto p = tmp_path("hq_t_round.pgm");
    write_pgm(p.string(), u);
    const ScalarField r = read_pgm(p.string());
    CHECK(r(0, 0) == doctest::Approx(1.0 / 255.0).epsilon(1e-15));
    CHECK(r(0, 1) == 0.0);
}

TEST_CASE("unsupported and malformed inputs are rejected") {
    SUBCASE("16-bit pgm") {
        const auto p = tmp_path("hq_t_16.pgm");
        write_bytes(p, "P5\n2 2\n65535\n\0\0\0\0\0\0\0\0");
        CHECK_THROWS_WITH_AS(read_pgm(p.string()),
                             doctest::Contains("unsupported bit depth"), std::runtime_error);
    }
    SUBCASE("color ppm gets a conversion hint") {
        const auto p = tmp_path("hq_t_p6.ppm");
        write_bytes(p, "P6\n1 1\n255\nabc");
        CHECK_THROWS_WITH_AS(read_pgm(p.string()), doctest::Contains("grayscale"),
                             std::runtime_error);
    }
    SUBCASE("truncated pixel data") {
        const auto p = tmp_path("hq_t_trunc.pgm");
        write_bytes(p, "P5\n4 4\n255\nxy");
        CHECK_THROWS_AS(read_pgm(p.string()), std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_image("/nonexistent/q.pgm"), std::runtime_error);
    }
    SUBCASE("color png gets a conversion hint") {
        const auto p = tmp_path("hq_t_rgb.png");
        // write a tiny RGB png directly
        FILE* fp = std::fopen(p.string().c_str(), "wb");
        REQUIRE(fp);
        png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        png_infop info = png_create_info_struct(png);
        REQUIRE(setjmp(png_jmpbuf(png)) == 0);
        png_init_io(png, fp);
        png_set_IHDR(png, info, 2, 2, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                     PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        std::uint8_t row[6] = {10, 20, 30, 40, 50, 60};
        png_bytep rows[2] = {row, row};
        png_write_image(png, rows);
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        CHECK_THROWS_WITH_AS(read_image(p.string()), doctest::Contains("grayscale"),
                             std::runtime_error);
    }
}

TEST_CASE("noise generation") {
    SUBCASE("sigma zero is the bitwise identity") {
        const ScalarField u = oracle::random_field(rng, 6, 6, 0, 1);
        CHECK(add_gaussian_noise(u, {0.0, 123}) == u);
    }
    SUBCASE("same seed gives bitwise identical output") {
        const ScalarField u = oracle::random_field(rng, 16, 16, 0, 1);
        const NoiseSpec spec{0.1, 42};
        CHECK(add_gaussian_noise(u, spec) == add_gaussian_noise(u, spec));
        CHECK_FALSE(add_gaussian_noise(u, spec) == add_gaussian_noise(u, {0.1, 43}));
    }
    SUBCASE("sample statistics on a 512x512 zero field") {
        const ScalarField z(512, 512, 0.0);
        const ScalarField g = add_gaussian_noise(z, {0.1, 2024});
        double mean = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) mean += g[k];
        mean /= static_cast<double>(g.size());
        double var = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) var += (g[k] - mean) * (g[k] - mean);
        var /= static_cast<double>(g.size() - 1);
        CHECK(std::abs(mean) < 1e-3);
        CHECK(std::abs(std::sqrt(var) - 0.1) < 1e-3);
    }
    SUBCASE("negative sigma is rejected") {
        CHECK_THROWS_AS(add_gaussian_noise(ScalarField(4, 4, 0.0), {-0.1, 0}),
                        std::invalid_argument);
    }
}
