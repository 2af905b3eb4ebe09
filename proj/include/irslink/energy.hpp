// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "irslink/types.hpp"

namespace irslink {

// Total power drain for a given transmit power.
double total_power(const PowerConfig& pc, double transmit_power);

// bit/joule for a given spectral efficiency and transmit power. Uses the
// non-ideal static drain; callers modeling ideal hardware substitute
// static_power_ideal themselves.
double energy_efficiency(double se, const PowerConfig& pc,
                         double transmit_power);

// Principal branch of the Lambert W function (inverse of w*exp(w)) on
// [-1/e, inf). Halley iteration with a branch-point series start; residual
// |W*exp(W) - x| stays below 1e-12 * max(1, |x|) over the domain.
double lambert_w0(double x);

// In the high-power regime ln(SNR) = ln(P) + constant. These return that
// constant (nats) for impaired and ideal hardware.
double hardware_rate_constant(const ImpairmentConfig& imp);
double ideal_rate_constant(const SystemConfig& cfg);

struct ClosedFormCandidate {
    double power = 0.0;
    double residual = 0.0;  // stationarity residual, relative to static power
};

// Residual of the EE stationarity condition mu*P*(ln P + C - 1) = P_static,
// normalized by P_static.
double stationarity_residual(double power, double rate_constant,
                             double amplifier_inefficiency,
                             double static_power);

// Two closed forms for the EE-optimal power circulate that differ only in
// where the Lambert W value lands:
//   ratio form    P = P_static / (mu * W(z))
//   product form  P = mu * W(z) / P_static
// with z = exp(C - 1) * P_static / mu. They are not equivalent; only one can
// satisfy the stationarity condition. Both are returned with their residuals
// (ratio form first) and optimal_power() selects by residual.
std::pair<ClosedFormCandidate, ClosedFormCandidate>
closed_form_candidates(double rate_constant, double amplifier_inefficiency,
                       double static_power);

// EE-optimal transmit power and the efficiency achieved there, using the
// high-power rate expression. Throws std::domain_error if neither closed
// form satisfies stationarity (residual above 1e-8).
OptimalPowerResult optimal_power(const ImpairmentConfig& imp,
                                 const PowerConfig& pc);

// Same optimization for ideal hardware; uses static_power_ideal.
OptimalPowerResult optimal_power_ideal(const SystemConfig& cfg,
                                       const PowerConfig& pc);

}  // namespace irslink
