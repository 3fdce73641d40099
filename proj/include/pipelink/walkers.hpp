#pragma once

#include "pipelink/channel.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pipelink {

/**
 * Configuration for the Brownian walker oracle: independent Euler–Maruyama
 * walkers released at the origin, absorbed the first time their position
 * reaches distance_x, watched until horizon_t.
 *
 * Determinism contract: results depend only on (channel, step_dt, horizon_t,
 * walker_count, rng_seed). Each walker owns RNG stream = its global index, so
 * the merged result is bitwise independent of `workers`.
 */
struct WalkConfig {
    ChannelParams channel;
    double step_dt = 0.0;           ///< time step [s]; <= 0 selects default_step_dt()
    double horizon_t = 0.0;         ///< observation horizon [s], > 0
    std::uint64_t walker_count = 1; ///< number of walkers, >= 1
    std::uint64_t rng_seed = 0;     ///< base seed; same seed => same result
    unsigned workers = 1;           ///< worker threads, >= 1; does not affect results

    /// Step actually used: step_dt if positive, else default_step_dt(channel).
    double resolved_step_dt() const;

    /// Throws ValidationError on nonpositive horizon/walker_count/workers or
    /// invalid channel, or when the resolved step exceeds the horizon.
    void validate() const;
};

/// Default time step: 1e-3 of the drift-free peak time x^2/(2D), small enough
/// that the boundary-crossing bias is inside the documented 0.005 capture
/// tolerance.
double default_step_dt(const ChannelParams& p);

/**
 * First-passage times tallied into user-supplied bins. Bin i counts absorption
 * times t with bin_edges[i] < t <= bin_edges[i+1]. absorbed_total also counts
 * absorptions that fall outside every bin.
 */
struct FirstPassageHistogram {
    std::vector<double> bin_edges;        ///< size B+1, strictly increasing
    std::vector<std::uint64_t> counts;    ///< size B
    std::uint64_t absorbed_total = 0;     ///< all absorptions within the horizon
    std::uint64_t walker_count = 0;

    double absorbed_fraction() const {
        return walker_count ? static_cast<double>(absorbed_total)
                                  / static_cast<double>(walker_count)
                            : 0.0;
    }
};

/**
 * Run the oracle and histogram the first-passage times.
 *
 * bin_edges must be strictly increasing, within [0, horizon_t], with at least
 * two entries (ValidationError otherwise). Walker positions advance by
 * v*dt + sqrt(2*D*dt)*xi per step (xi standard normal); absorption is checked
 * at step boundaries, so recorded times are integer multiples of the step.
 */
FirstPassageHistogram simulate_first_passage(const WalkConfig& cfg,
                                             std::span<const double> bin_edges);

/**
 * Empirical counterpart of windowed_capture / molecules_m: the fraction of
 * walkers absorbed inside (start_t, start_t + duration_tau]. The window must
 * lie within [0, horizon_t] (ValidationError otherwise). With the window
 * [0, horizon_t] this equals absorbed_fraction() of the same run exactly.
 */
double empirical_capture(const WalkConfig& cfg, const TimeWindow& w);

/**
 * CSV serialization: optional "# ..." comment first, a "t_lo,t_hi,count"
 * header, then one row per bin. No timestamps — identical runs produce
 * byte-identical files.
 */
void write_histogram_csv(std::ostream& os, const FirstPassageHistogram& h,
                         const std::string& header_comment);

} // namespace pipelink
