#include "pipelink/walkers.hpp"

#include "format.hpp"
#include "pipelink/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <thread>
#include <vector>

namespace pipelink {

double default_step_dt(const ChannelParams& p) {
    p.validate();
    return 1e-3 * p.distance_x * p.distance_x / (2.0 * p.diffusivity_d);
}

double WalkConfig::resolved_step_dt() const {
    return step_dt > 0.0 ? step_dt : default_step_dt(channel);
}

void WalkConfig::validate() const {
    channel.validate();
    if (!std::isfinite(horizon_t) || horizon_t <= 0.0)
        throw ValidationError("walk: horizon_t must be finite and > 0");
    if (!std::isfinite(step_dt))
        throw ValidationError("walk: step_dt must be finite");
    if (walker_count < 1)
        throw ValidationError("walk: walker_count must be >= 1");
    if (workers < 1)
        throw ValidationError("walk: workers must be >= 1");
    if (resolved_step_dt() > horizon_t)
        throw ValidationError("walk: step_dt exceeds horizon_t");
}

namespace {

/// Simulate walkers [first, last) and tally first-passage steps into
/// step_counts (bin i counts absorptions at step index i+1 ... capped by
/// max_steps entries handled by the caller through edges). To keep the hot
/// loop integer-only, absorption times are recorded as step indices and
/// mapped to bins afterwards.
struct WorkerTally {
    std::vector<std::uint64_t> bin_counts;
    std::uint64_t absorbed = 0;
};

WorkerTally run_walkers(const WalkConfig& cfg, std::span<const double> edges,
                        std::uint64_t first, std::uint64_t last) {
    const double dt = cfg.resolved_step_dt();
    const double drift_step = cfg.channel.drift_v * dt;
    const double diff_step = std::sqrt(2.0 * cfg.channel.diffusivity_d * dt);
    const double target = cfg.channel.distance_x;
    const auto max_steps =
        static_cast<std::uint64_t>(std::floor(cfg.horizon_t / dt + 1e-9));

    WorkerTally tally;
    tally.bin_counts.assign(edges.empty() ? 0 : edges.size() - 1, 0);

    for (std::uint64_t w = first; w < last; ++w) {
        rng::Xoshiro256pp gen(cfg.rng_seed, w);
        double pos = 0.0;
        for (std::uint64_t step = 1; step <= max_steps; ++step) {
            pos += drift_step + diff_step * rng::standard_normal(gen);
            if (pos >= target) {
                ++tally.absorbed;
                if (!edges.empty()) {
                    const double t = static_cast<double>(step) * dt;
                    // Bin convention (lo, hi]: first edge >= t closes the bin.
                    const auto it = std::lower_bound(edges.begin(), edges.end(), t);
                    if (it != edges.begin() && it != edges.end())
                        ++tally.bin_counts[static_cast<std::size_t>(it - edges.begin()) - 1];
                }
                break;
            }
        }
    }
    return tally;
}

void check_edges(const WalkConfig& cfg, std::span<const double> edges) {
    if (edges.size() < 2)
        throw ValidationError("histogram: need at least two bin edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!std::isfinite(edges[i]) || edges[i] < 0.0)
            throw ValidationError("histogram: bin edges must be finite and >= 0");
        if (i > 0 && edges[i] <= edges[i - 1])
            throw ValidationError("histogram: bin edges must be strictly increasing");
    }
    // Tolerate last-bit rounding when the caller computes the top edge from
    // the horizon itself.
    if (edges.back() > cfg.horizon_t * (1.0 + 1e-9))
        throw ValidationError("histogram: bin edges must lie within [0, horizon_t]");
}

} // namespace

FirstPassageHistogram simulate_first_passage(const WalkConfig& cfg,
                                             std::span<const double> bin_edges) {
    cfg.validate();
    check_edges(cfg, bin_edges);

    FirstPassageHistogram hist;
    hist.bin_edges.assign(bin_edges.begin(), bin_edges.end());
    hist.counts.assign(bin_edges.size() - 1, 0);
    hist.walker_count = cfg.walker_count;

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.walker_count));
    if (workers <= 1) {
        WorkerTally t = run_walkers(cfg, bin_edges, 0, cfg.walker_count);
        hist.counts = std::move(t.bin_counts);
        hist.absorbed_total = t.absorbed;
        return hist;
    }

    // Contiguous walker ranges per worker; streams are keyed by walker index,
    // so the partition cannot change any walker's path, and merging integer
    // tallies is exact — results are identical for any worker count.
    const std::uint64_t chunk = (cfg.walker_count + workers - 1) / workers;
    std::vector<WorkerTally> tallies(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned k = 0; k < workers; ++k) {
        const std::uint64_t first = std::min<std::uint64_t>(k * chunk, cfg.walker_count);
        const std::uint64_t last =
            std::min<std::uint64_t>(first + chunk, cfg.walker_count);
        pool.emplace_back([&, k, first, last] {
            tallies[k] = run_walkers(cfg, bin_edges, first, last);
        });
    }
    for (auto& th : pool) th.join();

    for (const auto& t : tallies) {
        hist.absorbed_total += t.absorbed;
        for (std::size_t i = 0; i < hist.counts.size(); ++i)
            hist.counts[i] += t.bin_counts[i];
    }
    return hist;
}

double empirical_capture(const WalkConfig& cfg, const TimeWindow& w) {
    cfg.validate();
    w.validate();
    if (w.end_t() > cfg.horizon_t * (1.0 + 1e-9))
        throw ValidationError("empirical_capture: window must lie within [0, horizon_t]");

    // A window that reaches the horizon is counted as the complement of the
    // pre-window absorptions, so capture over [0, horizon] equals the
    // absorbed fraction exactly (no dependence on how the last step rounds).
    if (w.end_t() >= cfg.horizon_t * (1.0 - 1e-12)) {
        if (w.start_t <= 0.0) {
            const double edges[2] = {0.0, cfg.horizon_t};
            const FirstPassageHistogram hist = simulate_first_passage(cfg, edges);
            return hist.absorbed_fraction();
        }
        const double edges[3] = {0.0, w.start_t, cfg.horizon_t};
        const FirstPassageHistogram hist = simulate_first_passage(cfg, edges);
        return static_cast<double>(hist.absorbed_total - hist.counts[0])
               / static_cast<double>(hist.walker_count);
    }

    const double edges[2] = {w.start_t, w.end_t()};
    const FirstPassageHistogram hist = simulate_first_passage(cfg, edges);
    return static_cast<double>(hist.counts[0]) / static_cast<double>(hist.walker_count);
}

void write_histogram_csv(std::ostream& os, const FirstPassageHistogram& h,
                         const std::string& header_comment) {
    detail::write_comment(os, header_comment);
    os << "t_lo,t_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        os << detail::format_double(h.bin_edges[i]) << ','
           << detail::format_double(h.bin_edges[i + 1]) << ',' << h.counts[i] << '\n';
}

} // namespace pipelink
