// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "irslink/types.hpp"

namespace irslink {

// Deterministic LoS channels of the two hops. The AP-IRS matrix is rank one
// by construction (outer product of the two array responses).
struct LosChannels {
    Eigen::MatrixXcd ap_to_irs;       // irs_elements x ap_antennas
    Eigen::RowVectorXcd irs_to_user;  // 1 x irs_elements
};

// Response of a square uniform planar array toward the given direction.
// Element n sits at grid position (x, y) = (n / side, n % side) and
// contributes exp(j*2*pi*spacing_ratio*(x*sin(az)*sin(el) + y*cos(el))).
// count must be a positive perfect square.
Eigen::VectorXcd array_response(int count, const Angles& direction,
                                double spacing_ratio);

LosChannels build_channels(const SystemConfig& cfg);

}  // namespace irslink
