#include "pipelink/link.hpp"

#include "format.hpp"
#include "pipelink/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>
#include <vector>

namespace pipelink {

void SamplingPolicy::validate() const {
    if (!std::isfinite(peak_arrival_T) || peak_arrival_T < 0.0)
        throw ValidationError("policy: peak_arrival_T must be finite and >= 0");
    if (!std::isfinite(delay_spread_tau) || delay_spread_tau <= 0.0)
        throw ValidationError("policy: delay_spread_tau must be finite and > 0");
    if (!std::isfinite(multiplier_n) || multiplier_n <= 0.0)
        throw ValidationError("policy: multiplier_n must be finite and > 0");
}

namespace {

/// Window capture fraction F(T + n*tau) - F(T); the single quantity both the
/// ber and the throughput laws are built from, computed once so the identity
/// rate * n * tau + ber == 1 holds to machine precision.
double window_capture_fraction(const ChannelParams& p, const SamplingPolicy& pol) {
    pol.validate();
    return cumulative_capture_fraction(p, pol.peak_arrival_T + pol.window_length())
           - cumulative_capture_fraction(p, pol.peak_arrival_T);
}

} // namespace

double molecular_ber(const ChannelParams& p, const SamplingPolicy& pol) {
    return 1.0 - window_capture_fraction(p, pol);
}

double molecular_throughput(const ChannelParams& p, const SamplingPolicy& pol) {
    return window_capture_fraction(p, pol) / pol.window_length();
}

std::vector<RatePoint> rate_surface(const ChannelParams& p,
                                    std::span<const double> tau_grid,
                                    std::span<const double> T_grid,
                                    double multiplier_n) {
    if (tau_grid.empty() || T_grid.empty())
        throw ValidationError("rate_surface: grids must be nonempty");
    std::vector<RatePoint> points;
    points.reserve(tau_grid.size() * T_grid.size());
    for (const double tau : tau_grid)
        for (const double T : T_grid) {
            const SamplingPolicy pol{T, tau, multiplier_n};
            const double captured = window_capture_fraction(p, pol);
            points.push_back(
                {tau, T, captured / pol.window_length(), 1.0 - captured});
        }
    return points;
}

void write_rate_surface_csv(std::ostream& os, std::span<const RatePoint> points,
                            const std::string& header_comment) {
    detail::write_comment(os, header_comment);
    os << "tau_s,T_s,rate_bps,ber\n";
    for (const auto& pt : points)
        os << detail::format_double(pt.tau) << ',' << detail::format_double(pt.T)
           << ',' << detail::format_double(pt.rate) << ','
           << detail::format_double(pt.ber) << '\n';
}

double default_detector_threshold(const ChannelParams& p, const SamplingPolicy& pol) {
    return 0.5 * p.molecules_m * window_capture_fraction(p, pol);
}

OokRunResult simulate_ook_link(const EmissionSchedule& sched, const SamplingPolicy& pol,
                               double detector_threshold, const WalkConfig& cfg) {
    sched.validate();
    pol.validate();
    cfg.validate();
    if (!std::isfinite(detector_threshold) || detector_threshold <= 0.0)
        throw ValidationError("simulate: detector_threshold must be finite and > 0");
    const auto molecules = static_cast<std::int64_t>(std::llround(cfg.channel.molecules_m));
    if (molecules < 1)
        throw ValidationError("simulate: channel.molecules_m must round to >= 1");

    const std::size_t symbols = sched.bits.size();
    const double period = sched.symbol_period;
    const double win_lo = pol.peak_arrival_T;
    const double win_hi = pol.peak_arrival_T + pol.window_length();
    const double last_window_end =
        static_cast<double>(symbols - 1) * period + win_hi;

    // Emissions to simulate: one per 1-bit, round(molecules_m) walkers each.
    std::vector<std::size_t> emission_symbols;
    for (std::size_t k = 0; k < symbols; ++k)
        if (sched.bits[k]) emission_symbols.push_back(k);

    const double dt = cfg.resolved_step_dt();
    const double drift_step = cfg.channel.drift_v * dt;
    const double diff_step = std::sqrt(2.0 * cfg.channel.diffusivity_d * dt);
    const double target = cfg.channel.distance_x;
    const auto m_u64 = static_cast<std::uint64_t>(molecules);

    // Each worker walks a contiguous slice of the flat (emission, walker)
    // index space; stream ids depend only on that flat index, so any worker
    // count produces identical counts.
    const std::uint64_t total_walkers = emission_symbols.size() * m_u64;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(
        cfg.workers, std::max<std::uint64_t>(total_walkers, 1)));
    std::vector<std::vector<std::uint64_t>> worker_counts(
        workers, std::vector<std::uint64_t>(symbols, 0));

    const auto run_slice = [&](unsigned worker, std::uint64_t first, std::uint64_t last) {
        auto& counts = worker_counts[worker];
        for (std::uint64_t flat = first; flat < last; ++flat) {
            const std::size_t sym = emission_symbols[flat / m_u64];
            const double emission_time = static_cast<double>(sym) * period;
            // Walkers cannot score after the last window closes.
            const double track_for =
                std::min(cfg.horizon_t, last_window_end - emission_time);
            const auto max_steps =
                static_cast<std::uint64_t>(std::floor(track_for / dt + 1e-9));
            const std::uint64_t stream = sym * m_u64 + flat % m_u64;

            rng::Xoshiro256pp gen(cfg.rng_seed, stream);
            double pos = 0.0;
            for (std::uint64_t step = 1; step <= max_steps; ++step) {
                pos += drift_step + diff_step * rng::standard_normal(gen);
                if (pos >= target) {
                    const double t_abs =
                        emission_time + static_cast<double>(step) * dt;
                    // Credit every symbol window (k*P + win_lo, k*P + win_hi]
                    // containing t_abs; at most ceil(win length / P) + 1 of them.
                    const auto k_hi = static_cast<std::int64_t>(
                        std::floor((t_abs - win_lo) / period));
                    const auto k_lo = static_cast<std::int64_t>(
                        std::ceil((t_abs - win_hi) / period)) - 1;
                    for (std::int64_t k = std::max<std::int64_t>(k_lo, 0);
                         k <= k_hi && k < static_cast<std::int64_t>(symbols); ++k) {
                        const double lo = static_cast<double>(k) * period + win_lo;
                        const double hi = static_cast<double>(k) * period + win_hi;
                        if (t_abs > lo && t_abs <= hi)
                            ++counts[static_cast<std::size_t>(k)];
                    }
                    break;
                }
            }
        }
    };

    if (workers <= 1 || total_walkers == 0) {
        run_slice(0, 0, total_walkers);
    } else {
        const std::uint64_t chunk = (total_walkers + workers - 1) / workers;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = std::min<std::uint64_t>(w * chunk, total_walkers);
            const std::uint64_t last =
                std::min<std::uint64_t>(first + chunk, total_walkers);
            pool.emplace_back([&run_slice, w, first, last] { run_slice(w, first, last); });
        }
        for (auto& th : pool) th.join();
    }

    OokRunResult result;
    result.symbols.resize(symbols);
    std::size_t errors = 0;
    for (std::size_t k = 0; k < symbols; ++k) {
        std::uint64_t count = 0;
        for (const auto& counts : worker_counts) count += counts[k];
        const bool decided =
            static_cast<double>(count) >= detector_threshold;
        result.symbols[k] = {static_cast<std::uint32_t>(k), sched.bits[k], count,
                             static_cast<std::uint8_t>(decided)};
        if (decided != (sched.bits[k] != 0)) ++errors;
    }
    result.empirical_ber =
        static_cast<double>(errors) / static_cast<double>(symbols);
    return result;
}

void write_symbol_csv(std::ostream& os, std::span<const SymbolOutcome> symbols,
                      const std::string& header_comment) {
    detail::write_comment(os, header_comment);
    os << "symbol,bit,capture_count,decided\n";
    for (const auto& s : symbols)
        os << s.symbol << ',' << static_cast<int>(s.bit) << ',' << s.capture_count
           << ',' << static_cast<int>(s.decided) << '\n';
}

} // namespace pipelink
