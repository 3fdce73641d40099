#pragma once

#include "pipelink/channel.hpp"

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace pipelink {

enum class TraceOrigin : std::uint8_t { synthesized, measured };

/**
 * Uniformly sampled received-signal trace. samples[i] is the amplitude at
 * time start_time + i * sample_period. Measured traces have already had
 * their baseline removed (see ingest_trace_csv), so amplitudes are >= 0.
 */
struct PulseTrace {
    double sample_period = 0.0;   ///< spacing between samples [s], > 0
    double start_time = 0.0;      ///< time of samples[0] [s]
    std::vector<double> samples;
    TraceOrigin origin = TraceOrigin::synthesized;

    double time_at(std::size_t i) const {
        return start_time + static_cast<double>(i) * sample_period;
    }

    /// Throws ValidationError unless sample_period > 0 and there are at
    /// least 8 samples.
    void validate() const;
};

/// Result of the -3 dB pulse-width measurement.
struct DelaySpread {
    double peak_time;   ///< time of the (earliest) trace maximum [s]
    double cross_time;  ///< first post-peak crossing of peak/sqrt(2) [s]
    double tau;         ///< cross_time - peak_time [s], > 0
};

/**
 * On-off-keyed emission pattern: bit k, when 1, releases one emission at
 * time k * symbol_period. spray_duration is the physical release time and
 * must fit inside the symbol period.
 */
struct EmissionSchedule {
    std::vector<std::uint8_t> bits;   ///< nonempty, entries 0 or 1
    double symbol_period = 0.0;       ///< P [s], >= spray_duration
    double spray_duration = 0.5;      ///< [s], > 0

    /// Throws ValidationError on empty bits, entries other than 0/1, or
    /// 0 < spray_duration <= symbol_period violations.
    void validate() const;
};

/**
 * Sample the single-emission hit rate on a uniform grid t = dt, 2*dt, ...
 * covering [0, horizon]. Requires horizon >= 3 * zero_drift_peak_time(p)
 * so the pulse body is inside the trace, and at least 8 samples
 * (ValidationError otherwise). Nonzero drift is supported.
 */
PulseTrace synthesize_impulse_trace(const ChannelParams& p, double sample_period,
                                    double horizon);

/**
 * Superpose one impulse response per 1-bit of the schedule, bit k delayed by
 * k * symbol_period. Horizon must be >= 3 * zero_drift_peak_time(p) +
 * (bits-1) * symbol_period so every emission's pulse body fits.
 */
PulseTrace synthesize_train_trace(const ChannelParams& p, const EmissionSchedule& sched,
                                  double sample_period, double horizon);

/**
 * Measure the delay spread of a single pulse: locate the earliest maximum A,
 * then the first later crossing of A/sqrt(2), linearly interpolated between
 * the bracketing samples.
 *
 * - A must exceed twice the trace median, else NoSignalError (flat or
 *   noise-only trace; mirrors a below-sensitivity measurement).
 * - The crossing must happen before the trace ends, else
 *   IncompleteTraceError.
 *
 * tau is computed from sample indices, so it is invariant under time shifts
 * of the trace and under positive rescaling of the amplitudes.
 */
DelaySpread estimate_delay_spread(const PulseTrace& trace);

/**
 * Parse a "t_s,amplitude" CSV (comment lines starting with '#' are skipped).
 * Requirements: >= 8 rows, strictly increasing times, spacing uniform to
 * within 1% of the mean gap, numeric fields only (ValidationError otherwise).
 * The baseline — the median of the first 5% of samples (at least one) — is
 * subtracted and the result clamped at 0. origin is set to measured.
 */
PulseTrace ingest_trace_csv(std::istream& is);

/// CSV serialization: optional "# ..." comment, "t_s,amplitude" header, one
/// row per sample. Byte-identical across reruns.
void write_trace_csv(std::ostream& os, const PulseTrace& trace,
                     const std::string& header_comment);

} // namespace pipelink
