#pragma once

#include "pipelink/channel.hpp"
#include "pipelink/pulse.hpp"
#include "pipelink/walkers.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pipelink {

/**
 * Receiver sampling policy for on-off keying: after each symbol boundary the
 * receiver counts absorptions inside the window
 * (peak_arrival_T, peak_arrival_T + multiplier_n * delay_spread_tau],
 * measured from the symbol's emission time.
 */
struct SamplingPolicy {
    double peak_arrival_T = 0.0;    ///< window start T [s], >= 0
    double delay_spread_tau = 0.0;  ///< channel delay spread tau [s], > 0
    double multiplier_n = 1.0;  ///< window length multiplier n, > 0

    double window_length() const { return multiplier_n * delay_spread_tau; }

    void validate() const;
};

/**
 * Miss probability of a single on-symbol under the analytic capture law:
 *
 *     ber = 1 - ( F(T + n*tau) - F(T) )
 *
 * the fraction of an emission that does not land in the sampling window.
 * Drift-free channels only (UnsupportedRegimeError otherwise). Monotone
 * nonincreasing in n; -> 1 as the window shrinks, -> F(infinity) complement
 * as it grows.
 */
double molecular_ber(const ChannelParams& p, const SamplingPolicy& pol);

/**
 * Single-symbol throughput in bits per second when each window carries one
 * bit:
 *
 *     rate = ( F(T + n*tau) - F(T) ) / (n * tau)
 *
 * so rate * n * tau + ber == 1 holds to machine precision. Bounded above by
 * 1 / (n * tau).
 */
double molecular_throughput(const ChannelParams& p, const SamplingPolicy& pol);

/// One evaluated point of the rate surface.
struct RatePoint {
    double tau;   ///< delay spread assumed by the receiver [s]
    double T;     ///< window start [s]
    double rate;  ///< throughput [bps]
    double ber;   ///< miss probability
};

/**
 * Evaluate throughput/ber over a (tau, T) grid at fixed multiplier n.
 * Rows are produced tau-major: all T values for tau_grid[0], then tau_grid[1],
 * ... Grids must be nonempty with tau > 0 and T >= 0 entries.
 */
std::vector<RatePoint> rate_surface(const ChannelParams& p,
                                    std::span<const double> tau_grid,
                                    std::span<const double> T_grid,
                                    double multiplier_n);

/// CSV serialization: "tau_s,T_s,rate_bps,ber" rows after an optional "# ..."
/// comment. Byte-identical across reruns.
void write_rate_surface_csv(std::ostream& os, std::span<const RatePoint> points,
                            const std::string& header_comment);

/// Per-symbol outcome of a simulated on-off-keyed transmission.
struct SymbolOutcome {
    std::uint32_t symbol;         ///< symbol index
    std::uint8_t bit;             ///< transmitted bit
    std::uint64_t capture_count;  ///< absorptions inside this symbol's window
    std::uint8_t decided;         ///< receiver decision (count >= threshold)
};

struct OokRunResult {
    double empirical_ber = 0.0;   ///< fraction of symbols decided wrongly
    std::vector<SymbolOutcome> symbols;
};

/**
 * Detector threshold halfway up the expected single-emission window capture:
 * 0.5 * M * (F(T + n*tau) - F(T)). Drift-free channels only.
 */
double default_detector_threshold(const ChannelParams& p, const SamplingPolicy& pol);

/**
 * Monte Carlo simulation of an on-off-keyed link with intersymbol
 * interference: each 1-bit releases round(molecules_m) walkers, every
 * absorption is credited to whichever symbol windows (k*P + T, k*P + T+n*tau]
 * contain it, and each symbol is decided by comparing its count against
 * detector_threshold.
 *
 * Walker RNG streams are keyed by (symbol index, walker index), so results
 * are deterministic in cfg.rng_seed and independent of cfg.workers. Each
 * emission is tracked for min(cfg.horizon_t, time to the last window end).
 * cfg.channel supplies geometry; cfg.walker_count is ignored in favor of
 * round(channel.molecules_m) per emission (must be >= 1).
 */
OokRunResult simulate_ook_link(const EmissionSchedule& sched, const SamplingPolicy& pol,
                               double detector_threshold, const WalkConfig& cfg);

/// CSV serialization: "symbol,bit,capture_count,decided" rows after an
/// optional "# ..." comment.
void write_symbol_csv(std::ostream& os, std::span<const SymbolOutcome> symbols,
                      const std::string& header_comment);

} // namespace pipelink
