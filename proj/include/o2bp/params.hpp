// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace o2bp {

/// Full parameterization of the (optionally drifted) oblique Bessel system
///
///   dX = dB + (alpha/X + beta/Y - theta) dt
///   dY = dC + (gamma/X + delta/Y - eta) dt,   d<B,C> = rho dt.
///
/// `alpha` and `delta` are the own-coordinate repulsions, `beta` and `gamma`
/// the cross interactions. `theta` and `eta` are the constant inward drifts
/// that make the process positive recurrent; both are zero for the plain
/// system.
struct O2BPParams
{
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 1.0;
    double rho = 0.0;
    double theta = 0.0;
    double eta = 0.0;

    /// Interaction matrix determinant alpha*delta - beta*gamma.
    double determinant() const { return alpha * delta - beta * gamma; }

    bool has_drift() const { return theta != 0.0 || eta != 0.0; }
};

/// Empty string when `p` is admissible, otherwise a message naming the
/// violated constraint (e.g. "alpha must be > 0").
std::string validation_error(const O2BPParams& p);

/// Throws std::invalid_argument carrying validation_error(p).
void validate(const O2BPParams& p);

} // namespace o2bp
