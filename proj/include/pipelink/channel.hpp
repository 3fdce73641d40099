#pragma once

#include "pipelink/errors.hpp"

namespace pipelink {

/**
 * One-dimensional advection–diffusion channel between a molecule source and
 * an absorbing detector a distance x downstream.
 *
 * An emission is an instantaneous release of molecules_m molecules at the
 * origin at t = 0. Molecules spread with diffusion coefficient diffusivity_d
 * and, optionally, ride a laminar drift drift_v toward the detector.
 */
struct ChannelParams {
    double distance_x = 0.0;    ///< source-to-detector distance x [m], > 0
    double diffusivity_d = 0.0; ///< diffusion coefficient D [m^2/s], > 0
    double drift_v = 0.0;       ///< drift velocity v [m/s], >= 0
    double molecules_m = 1.0;   ///< molecules per emission M, > 0

    /// Throws ValidationError unless x > 0, D > 0, v >= 0, M > 0 and all
    /// values are finite.
    void validate() const;
};

/// Half-open observation window (start_t, start_t + duration_tau].
struct TimeWindow {
    double start_t = 0.0;       ///< window start T [s], >= 0
    double duration_tau = 0.0;  ///< window length tau [s], > 0

    double end_t() const { return start_t + duration_tau; }

    /// Throws ValidationError unless start_t >= 0 and duration_tau > 0.
    void validate() const;
};

/**
 * Detector hit rate at time t after an emission:
 *
 *     phi(t) = M / sqrt(pi * D * t) * exp( -(x - v*t)^2 / (4*D*t) )
 *
 * Valid for t > 0 (ValidationError otherwise). Supports nonzero drift.
 * The value is nonnegative and vanishes as t -> 0+ and t -> infinity.
 */
double hit_concentration(const ChannelParams& p, double t);

/**
 * Fraction of an emission absorbed by the detector up to time t:
 *
 *     F(t) = erfc( x / (2 * sqrt(D * t)) ),    F(0) = 0.
 *
 * Only the pure-diffusion regime is calibrated: nonzero drift_v raises
 * UnsupportedRegimeError. Negative t raises ValidationError. F is
 * nondecreasing in t with values in [0, 1).
 */
double cumulative_capture_fraction(const ChannelParams& p, double t);

/**
 * Expected number of molecules absorbed inside a window:
 *
 *     M * ( F(T + tau) - F(T) )
 *
 * Same regime restrictions as cumulative_capture_fraction. The result is
 * clamped to [0, M] to absorb last-bit rounding in the erfc evaluations.
 */
double windowed_capture(const ChannelParams& p, const TimeWindow& w);

/**
 * Time of the hit-rate maximum for a drift-free channel: x^2 / (2*D).
 * Raises UnsupportedRegimeError when drift_v != 0 (the drifting peak sits
 * earlier and has no such closed form here).
 */
double zero_drift_peak_time(const ChannelParams& p);

} // namespace pipelink
