#pragma once

#include <span>
#include <string_view>

#include "hq/models.hpp"

namespace hq {

/// Named parameter sets from the reference experiments. The denoising
/// presets are anisotropic and assume intensities normalized to [0,1];
/// sigma01/sigma005 refer to the noise level they were tuned for. The ms
/// presets target 512x512 images; since the energy uses unnormalized sums,
/// alpha should be scaled down for substantially smaller inputs.
struct Preset {
    std::string_view name;
    ModelConfig config;
};

std::span<const Preset> presets();
const Preset* find_preset(std::string_view name);

}  // namespace hq
