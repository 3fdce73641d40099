#include "pipelink/pulse.hpp"

#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <vector>

namespace pipelink {

void PulseTrace::validate() const {
    if (!std::isfinite(sample_period) || sample_period <= 0.0)
        throw ValidationError("trace: sample_period must be finite and > 0");
    if (!std::isfinite(start_time))
        throw ValidationError("trace: start_time must be finite");
    if (samples.size() < 8)
        throw ValidationError("trace: need at least 8 samples");
}

void EmissionSchedule::validate() const {
    if (bits.empty())
        throw ValidationError("schedule: bit pattern must be nonempty");
    for (const auto b : bits)
        if (b > 1)
            throw ValidationError("schedule: bits must be 0 or 1");
    if (!std::isfinite(spray_duration) || spray_duration <= 0.0)
        throw ValidationError("schedule: spray_duration must be finite and > 0");
    if (!std::isfinite(symbol_period) || symbol_period < spray_duration)
        throw ValidationError("schedule: symbol_period must be >= spray_duration");
}

namespace {

PulseTrace sample_grid(const ChannelParams& p, double sample_period, double horizon,
                       double min_horizon, const std::vector<std::uint8_t>* bits,
                       double symbol_period) {
    p.validate();
    if (!std::isfinite(sample_period) || sample_period <= 0.0)
        throw ValidationError("synthesize: sample_period must be finite and > 0");
    if (!std::isfinite(horizon) || horizon < min_horizon)
        throw ValidationError("synthesize: horizon must cover the pulse body "
                              "(3x the drift-free peak time of every emission)");

    const auto n = static_cast<std::size_t>(std::floor(horizon / sample_period + 1e-9));
    if (n < 8)
        throw ValidationError("synthesize: horizon/sample_period must yield >= 8 samples");

    PulseTrace trace;
    trace.sample_period = sample_period;
    trace.start_time = sample_period;
    trace.origin = TraceOrigin::synthesized;
    trace.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i + 1) * sample_period;
        double acc = 0.0;
        if (bits == nullptr) {
            acc = hit_concentration(p, t);
        } else {
            for (std::size_t k = 0; k < bits->size(); ++k) {
                if (!(*bits)[k]) continue;
                const double rel = t - static_cast<double>(k) * symbol_period;
                if (rel > 0.0) acc += hit_concentration(p, rel);
            }
        }
        trace.samples[i] = acc;
    }
    return trace;
}

} // namespace

PulseTrace synthesize_impulse_trace(const ChannelParams& p, double sample_period,
                                    double horizon) {
    const double body = 3.0 * zero_drift_peak_time(ChannelParams{
        p.distance_x, p.diffusivity_d, 0.0, p.molecules_m});
    return sample_grid(p, sample_period, horizon, body, nullptr, 0.0);
}

PulseTrace synthesize_train_trace(const ChannelParams& p, const EmissionSchedule& sched,
                                  double sample_period, double horizon) {
    sched.validate();
    const double body = 3.0 * zero_drift_peak_time(ChannelParams{
        p.distance_x, p.diffusivity_d, 0.0, p.molecules_m});
    const double min_horizon =
        body + static_cast<double>(sched.bits.size() - 1) * sched.symbol_period;
    return sample_grid(p, sample_period, horizon, min_horizon, &sched.bits,
                       sched.symbol_period);
}

DelaySpread estimate_delay_spread(const PulseTrace& trace) {
    trace.validate();
    const auto& s = trace.samples;

    // Earliest maximum.
    std::size_t peak_idx = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > s[peak_idx]) peak_idx = i;
    const double peak = s[peak_idx];

    // A pulse must stand out from the bulk of the trace: require the peak to
    // clear twice the median amplitude, the same way a receiver requires a
    // margin over its noise floor.
    std::vector<double> sorted(s);
    const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
    std::nth_element(sorted.begin(), mid, sorted.end());
    if (!(peak > 0.0) || !(peak >= 2.0 * *mid))
        throw NoSignalError("trace has no detectable pulse above the baseline");

    // First post-peak crossing of peak/sqrt(2), linearly interpolated.
    // Times are derived from sample indices so tau is immune to start_time.
    const double threshold = peak / std::numbers::sqrt2;
    for (std::size_t i = peak_idx + 1; i < s.size(); ++i) {
        if (s[i] <= threshold) {
            const double frac = (s[i - 1] - threshold) / (s[i - 1] - s[i]);
            const double cross_rel =
                (static_cast<double>(i - 1) + frac) * trace.sample_period;
            const double peak_rel =
                static_cast<double>(peak_idx) * trace.sample_period;
            return DelaySpread{trace.start_time + peak_rel,
                               trace.start_time + cross_rel, cross_rel - peak_rel};
        }
    }
    throw IncompleteTraceError("trace ends before the post-peak -3 dB crossing");
}

PulseTrace ingest_trace_csv(std::istream& is) {
    std::vector<double> times;
    std::vector<double> amps;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;

    while (std::getline(is, line)) {
        ++line_no;
        const std::string row = detail::trim(line);
        if (row.empty() || row.front() == '#') continue;
        if (!header_seen) {
            if (row != "t_s,amplitude")
                throw ValidationError("trace csv: expected header 't_s,amplitude'");
            header_seen = true;
            continue;
        }
        const auto fields = detail::split_csv_row(row);
        if (fields.size() != 2)
            throw ValidationError("trace csv: expected 2 fields on line "
                                  + std::to_string(line_no));
        times.push_back(detail::parse_double_field(fields[0], "t_s", line_no));
        amps.push_back(detail::parse_double_field(fields[1], "amplitude", line_no));
    }
    if (!header_seen)
        throw ValidationError("trace csv: missing 't_s,amplitude' header");
    if (times.size() < 8)
        throw ValidationError("trace csv: need at least 8 rows");

    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw ValidationError("trace csv: times must be strictly increasing");

    const double span = times.back() - times.front();
    const double mean_gap = span / static_cast<double>(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double gap = times[i] - times[i - 1];
        if (std::abs(gap - mean_gap) > 0.01 * mean_gap)
            throw ValidationError("trace csv: sample spacing varies by more than 1%");
    }

    // Baseline: median of the leading 5% of samples (at least one), removed
    // so measured traces share the nonnegative-amplitude convention.
    const std::size_t nb = std::max<std::size_t>(1, amps.size() / 20);
    std::vector<double> head(amps.begin(), amps.begin() + static_cast<std::ptrdiff_t>(nb));
    const auto mid = head.begin() + static_cast<std::ptrdiff_t>(head.size() / 2);
    std::nth_element(head.begin(), mid, head.end());
    const double baseline = *mid;

    PulseTrace trace;
    trace.sample_period = mean_gap;
    trace.start_time = times.front();
    trace.origin = TraceOrigin::measured;
    trace.samples.resize(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i)
        trace.samples[i] = std::max(0.0, amps[i] - baseline);
    trace.validate();
    return trace;
}

void write_trace_csv(std::ostream& os, const PulseTrace& trace,
                     const std::string& header_comment) {
    trace.validate();
    detail::write_comment(os, header_comment);
    os << "t_s,amplitude\n";
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        os << detail::format_double(trace.time_at(i)) << ','
           << detail::format_double(trace.samples[i]) << '\n';
}

} // namespace pipelink
