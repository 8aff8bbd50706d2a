#include <doctest.h>

#include "hq/presets.hpp"

using namespace hq;

namespace {
const ModelConfig& get(const char* name) {
    const Preset* p = find_preset(name);
    REQUIRE(p != nullptr);
    return p->config;
}
}  // namespace

TEST_CASE("denoising presets carry the reference parameter values") {
    CHECK(get("gm-aniso-sigma01").mu == 0.02);
    CHECK(get("gm-aniso-sigma01").lambda == 0.05);
    CHECK(get("gm-aniso-sigma005").mu == 0.007);
    CHECK(get("gm-aniso-sigma005").lambda == 0.004);

    CHECK(get("gr-aniso-sigma01").mu == 3.0);
    CHECK(get("gr-aniso-sigma01").lambda == 0.01);
    CHECK(get("gr-aniso-sigma005").mu == 1.5);
    CHECK(get("gr-aniso-sigma005").lambda == 0.05);

    CHECK(get("gy-aniso-sigma01").mu == 3.0);
    CHECK(get("gy-aniso-sigma01").lambda == 0.01);
    CHECK(get("gy-aniso-sigma005").mu == 1.5);
    CHECK(get("gy-aniso-sigma005").lambda == 0.05);

    CHECK(get("hl-aniso-sigma01").mu == 0.005);
    CHECK(get("hl-aniso-sigma01").lambda == 0.001);
    CHECK(get("hl-aniso-sigma005").mu == 0.002);
    CHECK(get("hl-aniso-sigma005").lambda == 0.0005);

    for (const Preset& p : presets()) {
        if (p.config.model == Model::ms) continue;
        CHECK(p.config.isotropy == Isotropy::aniso);
    }
}

TEST_CASE("segmentation presets") {
    CHECK(get("ms-alpha5000").alpha == 5000.0);
    CHECK(get("ms-alpha5000").lambda == 0.1);
    CHECK(get("ms-alpha5000").epsilon == 0.02);
    CHECK(get("ms-alpha3000").alpha == 3000.0);
}

TEST_CASE("every preset validates and lookups fail cleanly") {
    for (const Preset& p : presets()) CHECK_NOTHROW(p.config.validate());
    CHECK(find_preset("no-such-preset") == nullptr);
}
