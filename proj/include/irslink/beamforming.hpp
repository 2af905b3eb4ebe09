// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "irslink/types.hpp"

namespace irslink {

// Reflection phases that align all IRS elements for the configured geometry:
// each phase cancels the element-dependent part of the cascaded AP-IRS-user
// path, so the reflected contributions add coherently.
Eigen::VectorXd optimal_irs_phases(const SystemConfig& cfg);

// Maximum ratio transmission against the cascade seen through these IRS
// phases. Unit norm; the global phase is fixed so the first entry is real
// and nonnegative, making the vector unique. Throws std::domain_error if
// the cascade vanishes (pathological phase choices).
Eigen::VectorXcd mrt_beamformer(const SystemConfig& cfg,
                                const Eigen::VectorXd& irs_phases);

BeamformingSolution design_beamforming(const SystemConfig& cfg);

}  // namespace irslink
