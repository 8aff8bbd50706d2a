#pragma once

#include <cstdint>
#include <string>

#include "hq/grid.hpp"

namespace hq {

// Grayscale file I/O. Two formats: binary PGM (P5, maxval 255, header
// exactly "P5\n<cols> <rows>\n255\n") and 8-bit grayscale PNG. Reading maps
// byte v to v/255; writing clamps to [0,1] and rounds half away from zero.
// Color or 16-bit inputs are rejected.

ScalarField read_image(const std::string& path);
void write_image(const std::string& path, const ScalarField& u);

ScalarField read_pgm(const std::string& path);
void write_pgm(const std::string& path, const ScalarField& u);
ScalarField read_png(const std::string& path);
void write_png(const std::string& path, const ScalarField& u);

struct NoiseSpec {
    double sigma = 0.0;       // standard deviation in normalized intensity
    std::uint64_t seed = 0;

    void validate() const {
        if (sigma < 0.0) throw std::invalid_argument("NoiseSpec: sigma must be >= 0");
    }
};

/// u + sigma * g with g i.i.d. standard normal. The generator is pinned for
/// reproducibility: mt19937_64 seeded with `seed`, uniforms from the top 53
/// bits mapped to (0,1], Box-Muller pairs consumed in row-major order. The
/// output is not clamped; clamping happens only at file write.
ScalarField add_gaussian_noise(const ScalarField& u, const NoiseSpec& spec);

}  // namespace hq
