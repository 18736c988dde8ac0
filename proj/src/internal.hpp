#pragma once

#include "dcsclust/linalg.hpp"

namespace dcsclust::detail {

/// Standardized (location 0, scale 1) skewed-t information by quadrature.
/// Depends on the slant and df only; callers rescale for the actual scale.
SymMat skewt_information_std(double lambda, double v);

}  // namespace dcsclust::detail
