#include "hq/presets.hpp"

#include <array>

namespace hq {

namespace {

ModelConfig denoise_cfg(Model m, double mu, double lambda) {
    ModelConfig c;
    c.model = m;
    c.isotropy = Isotropy::aniso;
    c.mu = mu;
    c.lambda = lambda;
    return c;
}

ModelConfig ms_cfg(double alpha, double lambda, double epsilon) {
    ModelConfig c;
    c.model = Model::ms;
    c.isotropy = Isotropy::iso;
    c.alpha = alpha;
    c.lambda = lambda;
    c.epsilon = epsilon;
    c.mu = 1.0;  // unused by ms
    return c;
}

const std::array<Preset, 10> kPresets = {{
    {"gm-aniso-sigma01", denoise_cfg(Model::gm, 0.02, 0.05)},
    {"gm-aniso-sigma005", denoise_cfg(Model::gm, 0.007, 0.004)},
    {"gr-aniso-sigma01", denoise_cfg(Model::gr, 3.0, 0.01)},
    {"gr-aniso-sigma005", denoise_cfg(Model::gr, 1.5, 0.05)},
    {"gy-aniso-sigma01", denoise_cfg(Model::gy, 3.0, 0.01)},
    {"gy-aniso-sigma005", denoise_cfg(Model::gy, 1.5, 0.05)},
    {"hl-aniso-sigma01", denoise_cfg(Model::hl, 0.005, 0.001)},
    {"hl-aniso-sigma005", denoise_cfg(Model::hl, 0.002, 0.0005)},
    {"ms-alpha5000", ms_cfg(5000.0, 0.1, 0.02)},
    {"ms-alpha3000", ms_cfg(3000.0, 0.1, 0.02)},
}};

}  // namespace

std::span<const Preset> presets() { return kPresets; }

const Preset* find_preset(std::string_view name) {
    for (const Preset& p : kPresets)
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace hq
