#include "pipelink/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pipelink {

void ChannelParams::validate() const {
    if (!std::isfinite(distance_x) || distance_x <= 0.0)
        throw ValidationError("channel: distance_x must be finite and > 0");
    if (!std::isfinite(diffusivity_d) || diffusivity_d <= 0.0)
        throw ValidationError("channel: diffusivity_d must be finite and > 0");
    if (!std::isfinite(drift_v) || drift_v < 0.0)
        throw ValidationError("channel: drift_v must be finite and >= 0");
    if (!std::isfinite(molecules_m) || molecules_m <= 0.0)
        throw ValidationError("channel: molecules_m must be finite and > 0");
}

void TimeWindow::validate() const {
    if (!std::isfinite(start_t) || start_t < 0.0)
        throw ValidationError("window: start_t must be finite and >= 0");
    if (!std::isfinite(duration_tau) || duration_tau <= 0.0)
        throw ValidationError("window: duration_tau must be finite and > 0");
}

double hit_concentration(const ChannelParams& p, double t) {
    p.validate();
    if (!std::isfinite(t) || t <= 0.0)
        throw ValidationError("hit_concentration: t must be finite and > 0");
    const double miss = p.distance_x - p.drift_v * t;
    const double spread = 4.0 * p.diffusivity_d * t;
    return p.molecules_m / std::sqrt(std::numbers::pi * p.diffusivity_d * t)
           * std::exp(-(miss * miss) / spread);
}

double cumulative_capture_fraction(const ChannelParams& p, double t) {
    p.validate();
    if (p.drift_v != 0.0)
        throw UnsupportedRegimeError(
            "cumulative_capture_fraction: only the drift-free regime is supported");
    if (!std::isfinite(t) || t < 0.0)
        throw ValidationError("cumulative_capture_fraction: t must be finite and >= 0");
    if (t == 0.0)
        return 0.0;
    return std::erfc(p.distance_x / (2.0 * std::sqrt(p.diffusivity_d * t)));
}

double windowed_capture(const ChannelParams& p, const TimeWindow& w) {
    w.validate();
    const double captured = cumulative_capture_fraction(p, w.end_t())
                            - cumulative_capture_fraction(p, w.start_t);
    return std::clamp(captured, 0.0, 1.0) * p.molecules_m;
}

double zero_drift_peak_time(const ChannelParams& p) {
    p.validate();
    if (p.drift_v != 0.0)
        throw UnsupportedRegimeError(
            "zero_drift_peak_time: defined for the drift-free regime only");
    return p.distance_x * p.distance_x / (2.0 * p.diffusivity_d);
}

} // namespace pipelink
