#pragma once

#include "hq/grid.hpp"

namespace hq {

double mse(const ScalarField& a, const ScalarField& b);
double l2_norm(const ScalarField& f);
double step_norm(const ScalarField& a, const ScalarField& b);

/// Peak signal-to-noise ratio in dB against peak 1.0, measured on copies
/// clamped to [0,1] (solvers may overshoot slightly; clamping matches what
/// an 8-bit writer would emit). Identical inputs yield +infinity.
double psnr(const ScalarField& u, const ScalarField& ref);

}  // namespace hq
