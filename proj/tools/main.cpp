// pipelink — command-line front end for the pipe-network molecular /
// radio link toolkit. Subcommands: capture, ber, rate, delay-spread, fit,
// predict, oracle, simulate, dataset.
//
// Exit codes: 0 success, 2 validation / unsupported regime, 3 no-signal,
// 4 file I/O. Every artifact embeds the tool version and the full resolved
// parameter set (including the seed) in a leading "# " comment; no
// timestamps, so reruns are byte-identical.

#include "pipelink/channel.hpp"
#include "pipelink/errors.hpp"
#include "pipelink/link.hpp"
#include "pipelink/propagation.hpp"
#include "pipelink/pulse.hpp"
#include "pipelink/version.hpp"
#include "pipelink/walkers.hpp"

#include "../src/format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using pipelink::detail::format_double;

std::string fd(double v) { return format_double(v); }

void print_kv(const char* key, const std::string& value) {
    std::cout << key << ' ' << value << '\n';
}

void print_kv(const char* key, double value) { print_kv(key, fd(value)); }

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw pipelink::IoError("cannot open output file '" + path + "'");
    return os;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw pipelink::IoError("cannot open input file '" + path + "'");
    return is;
}

std::vector<std::uint8_t> parse_bits(const std::string& s) {
    if (s.empty())
        throw pipelink::ValidationError("--bits must be a nonempty string of 0/1");
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (const char c : s) {
        if (c != '0' && c != '1')
            throw pipelink::ValidationError("--bits may contain only 0 and 1");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return bits;
}

/// Parse a "name=lo:hi:count" grid spec into an inclusive linspace.
std::vector<double> parse_grid(const std::string& spec, const std::string& name) {
    const std::string prefix = name + "=";
    if (spec.rfind(prefix, 0) != 0)
        throw pipelink::ValidationError("--surface expects a '" + name
                                        + "=lo:hi:count' grid spec, got '" + spec + "'");
    const std::string body = spec.substr(prefix.size());
    double lo = 0.0, hi = 0.0;
    long count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(body);
    if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || !ss.eof()
        || count < 1)
        throw pipelink::ValidationError("malformed grid spec '" + spec + "'");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] =
            count == 1 ? lo
                       : lo + (hi - lo) * static_cast<double>(i)
                             / static_cast<double>(count - 1);
    return grid;
}

/// Channel flags shared by the physics subcommands.
struct ChannelFlags {
    pipelink::ChannelParams params;

    void attach(CLI::App* cmd, bool with_drift = true) {
        cmd->add_option("--x", params.distance_x, "source-detector distance [m]")
            ->required();
        cmd->add_option("--d", params.diffusivity_d, "diffusion coefficient [m^2/s]")
            ->required();
        if (with_drift)
            cmd->add_option("--v", params.drift_v, "drift velocity [m/s] (default 0)");
        cmd->add_option("--m", params.molecules_m, "molecules per emission (default 1)");
    }

    std::string describe() const {
        return "x=" + fd(params.distance_x) + " d=" + fd(params.diffusivity_d)
               + " v=" + fd(params.drift_v) + " m=" + fd(params.molecules_m);
    }
};

struct WalkFlags {
    double dt = 0.0;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    unsigned workers = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--dt", dt, "walker time step [s] (default: auto)");
        cmd->add_option("--horizon", horizon, "tracking horizon [s]");
        cmd->add_option("--seed", seed, "RNG seed (default 0)");
        cmd->add_option("--workers", workers, "worker threads (default 1)");
    }
};

std::vector<pipelink::MeasurementRecord> load_dataset(const std::string& path,
                                                      bool builtin) {
    if (builtin || path.empty())
        return pipelink::builtin_dataset();
    std::ifstream is = open_input(path);
    return pipelink::read_dataset_csv(is);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- capture

void setup_capture(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "capture", "expected windowed capture M*(F(t0+tau) - F(t0))");
    auto flags = std::make_shared<ChannelFlags>();
    auto window = std::make_shared<pipelink::TimeWindow>();
    flags->attach(cmd);
    cmd->add_option("--t0", window->start_t, "window start [s]")->required();
    cmd->add_option("--tau", window->duration_tau, "window length [s]")->required();
    cmd->callback([flags, window] {
        std::cout << fd(pipelink::windowed_capture(flags->params, *window)) << '\n';
    });
}

// -------------------------------------------------------------------- ber

void setup_ber(CLI::App& app) {
    auto* cmd = app.add_subcommand("ber", "single-symbol miss probability");
    auto flags = std::make_shared<ChannelFlags>();
    auto pol = std::make_shared<pipelink::SamplingPolicy>();
    auto ntau = std::make_shared<double>(0.0);
    flags->attach(cmd);
    cmd->add_option("--T", pol->peak_arrival_T, "window start [s] (default 0)");
    auto* tau_opt = cmd->add_option("--tau", pol->delay_spread_tau, "delay spread [s]");
    auto* n_opt = cmd->add_option("--n", pol->multiplier_n,
                                  "window multiplier n (default 1)");
    auto* ntau_opt =
        cmd->add_option("--ntau", *ntau, "combined window length n*tau [s]")
            ->excludes(tau_opt)
            ->excludes(n_opt);
    cmd->callback([flags, pol, ntau, ntau_opt, tau_opt] {
        if (ntau_opt->count() > 0) {
            pol->delay_spread_tau = *ntau;
            pol->multiplier_n = 1.0;
        } else if (tau_opt->count() == 0) {
            throw pipelink::ValidationError("ber: provide --tau (with --n) or --ntau");
        }
        std::cout << fd(pipelink::molecular_ber(flags->params, *pol)) << '\n';
    });
}

// ------------------------------------------------------------------- rate

void setup_rate(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "rate", "windowed throughput [bps]; --surface sweeps a (tau, T) grid");
    auto flags = std::make_shared<ChannelFlags>();
    auto pol = std::make_shared<pipelink::SamplingPolicy>();
    auto surface = std::make_shared<std::vector<std::string>>();
    auto out = std::make_shared<std::string>();
    flags->attach(cmd);
    auto* tau_opt = cmd->add_option("--tau", pol->delay_spread_tau, "delay spread [s]");
    cmd->add_option("--T", pol->peak_arrival_T, "window start [s] (default 0)");
    cmd->add_option("--n", pol->multiplier_n, "window multiplier n (default 1)");
    auto* surf_opt = cmd->add_option("--surface", *surface,
                                     "grid specs 'tau=lo:hi:count' 'T=lo:hi:count'")
                         ->expected(2);
    cmd->add_option("-o,--output", *out, "surface CSV path (default: stdout)");
    cmd->callback([flags, pol, surface, out, surf_opt, tau_opt] {
        if (surf_opt->count() > 0) {
            // Accept the two grid specs in either order.
            const bool tau_first = (*surface)[0].rfind("tau=", 0) == 0;
            const auto tau_grid =
                parse_grid((*surface)[tau_first ? 0 : 1], "tau");
            const auto t_grid = parse_grid((*surface)[tau_first ? 1 : 0], "T");
            const auto points = pipelink::rate_surface(flags->params, tau_grid,
                                                       t_grid, pol->multiplier_n);
            const std::string header =
                std::string("pipelink ") + pipelink::kVersion + " | rate surface | "
                + flags->describe() + " n=" + fd(pol->multiplier_n)
                + " tau_grid=" + (*surface)[tau_first ? 0 : 1]
                + " T_grid=" + (*surface)[tau_first ? 1 : 0];
            if (out->empty()) {
                pipelink::write_rate_surface_csv(std::cout, points, header);
            } else {
                std::ofstream os = open_output(*out);
                pipelink::write_rate_surface_csv(os, points, header);
            }
            return;
        }
        if (tau_opt->count() == 0)
            throw pipelink::ValidationError("rate: provide --tau or --surface");
        std::cout << fd(pipelink::molecular_throughput(flags->params, *pol)) << '\n';
    });
}

// ----------------------------------------------------------- delay-spread

void setup_delay_spread(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "delay-spread", "peak-to-(peak/sqrt(2)) width of a trace CSV");
    auto path = std::make_shared<std::string>();
    auto ns_ok = std::make_shared<bool>(false);
    cmd->add_option("trace", *path, "trace CSV file (t_s,amplitude)")->required();
    cmd->add_flag("--no-signal-ok", *ns_ok,
                  "print NS and exit 0 when no pulse is detectable");
    cmd->callback([path, ns_ok] {
        std::ifstream is = open_input(*path);
        const pipelink::PulseTrace trace = pipelink::ingest_trace_csv(is);
        try {
            const pipelink::DelaySpread ds = pipelink::estimate_delay_spread(trace);
            print_kv("peak_time_s", ds.peak_time);
            print_kv("cross_time_s", ds.cross_time);
            print_kv("tau_s", ds.tau);
        } catch (const pipelink::NoSignalError&) {
            if (!*ns_ok) throw;
            std::cout << "NS\n";
        }
    });
}

// -------------------------------------------------------------------- fit

void print_fit_report(const std::vector<pipelink::MeasurementRecord>& data) {
    const pipelink::RadioModel rm = pipelink::fit_radio(data);
    const pipelink::MolecularModel mm = pipelink::fit_molecular(data);

    print_kv("radio_intercept_dbm", rm.rssi_intercept_dbm);
    print_kv("radio_slope_db_per_m", rm.slope_db_per_m);
    print_kv("radio_first_bend_loss_db", rm.first_bend_loss_db);
    print_kv("radio_sensitivity_dbm", rm.sensitivity_dbm);
    print_kv("molecular_intercept_s", mm.tau_intercept_s);
    print_kv("molecular_slope_s_per_m", mm.slope_s_per_m);
    print_kv("molecular_bend_factor", mm.bend_factor);
    print_kv("molecular_bend_factor_unclamped", mm.bend_factor_unclamped);

    std::cout << "\nresiduals:\n"
              << "shape,length_m,bends,rssi_meas_dbm,rssi_pred_dbm,"
                 "delay_meas_s,delay_pred_s\n";
    for (const auto& r : data) {
        if (r.topology.endpoints != pipelink::Endpoints::sealed_tanks
            || !r.topology.pipe_connected)
            continue;
        const auto pred_rssi = pipelink::predict_rssi(rm, r.topology);
        const double pred_delay = pipelink::predict_delay_spread(mm, r.topology);
        std::cout << r.topology.shape_label << ',' << fd(r.topology.total_length)
                  << ',' << r.topology.bend_count << ','
                  << (r.rssi_dbm ? fd(*r.rssi_dbm) : "NS") << ','
                  << (pred_rssi ? fd(*pred_rssi) : "NS") << ','
                  << (r.delay_spread_s ? fd(*r.delay_spread_s) : "NS") << ','
                  << fd(pred_delay) << '\n';
    }

    std::cout << "\nfeasibility:\n"
              << "shape,length_m,bends,radio_up,molecular_up,"
                 "radio_observed,molecular_observed\n";
    for (const auto& r : data) {
        if (r.topology.endpoints != pipelink::Endpoints::sealed_tanks
            || !r.topology.pipe_connected)
            continue;
        const auto feas = pipelink::classify_feasibility(rm, mm, r.topology);
        std::cout << r.topology.shape_label << ',' << fd(r.topology.total_length)
                  << ',' << r.topology.bend_count << ',' << bool_str(feas.radio_up)
                  << ',' << bool_str(feas.molecular_up) << ','
                  << bool_str(r.rssi_dbm.has_value()) << ','
                  << bool_str(r.delay_spread_s.has_value()) << '\n';
    }
}

void setup_fit(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "fit", "fit radio and molecular propagation models to a dataset");
    auto path = std::make_shared<std::string>();
    auto builtin = std::make_shared<bool>(false);
    cmd->add_option("dataset", *path, "dataset CSV file");
    cmd->add_flag("--builtin", *builtin, "use the embedded measurement campaign");
    cmd->callback([path, builtin] {
        if (path->empty() && !*builtin)
            throw pipelink::ValidationError("fit: provide a dataset file or --builtin");
        print_fit_report(load_dataset(*path, *builtin));
    });
}

// ---------------------------------------------------------------- predict

void setup_predict(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "predict", "predicted RSSI, delay spread and feasibility for a topology");
    auto topo = std::make_shared<pipelink::PipeTopology>();
    auto path = std::make_shared<std::string>();
    auto builtin = std::make_shared<bool>(false);
    auto ber_target = std::make_shared<double>(0.0);
    auto n = std::make_shared<double>(1.0);
    cmd->add_option("--length", topo->total_length, "pipe length [m]")->required();
    cmd->add_option("--bends", topo->bend_count, "bend count (default 0)");
    cmd->add_option("--shape", topo->shape_label, "label for the report");
    cmd->add_option("--data", *path, "calibration dataset CSV (default: builtin)");
    cmd->add_flag("--builtin", *builtin, "use the embedded measurement campaign");
    auto* ber_opt = cmd->add_option("--ber-target", *ber_target,
                                    "also report throughput at this miss probability");
    cmd->add_option("--n", *n, "window multiplier for --ber-target (default 1)");
    cmd->callback([topo, path, builtin, ber_target, n, ber_opt] {
        const auto data = load_dataset(*path, *builtin);
        const pipelink::RadioModel rm = pipelink::fit_radio(data);
        const pipelink::MolecularModel mm = pipelink::fit_molecular(data);
        const auto rssi = pipelink::predict_rssi(rm, *topo);
        const double delay = pipelink::predict_delay_spread(mm, *topo);
        const auto feas = pipelink::classify_feasibility(rm, mm, *topo);
        print_kv("rssi_dbm", rssi ? fd(*rssi) : "NS");
        print_kv("delay_spread_s", delay);
        print_kv("radio_up", bool_str(feas.radio_up));
        print_kv("molecular_up", bool_str(feas.molecular_up));
        if (ber_opt->count() > 0) {
            if (*ber_target < 0.0 || *ber_target >= 1.0)
                throw pipelink::ValidationError("--ber-target must be in [0, 1)");
            if (*n <= 0.0)
                throw pipelink::ValidationError("--n must be > 0");
            // Implied throughput when the window is tuned for the target miss
            // probability: (1 - ber) bits land per n*tau seconds.
            print_kv("rate_bps", (1.0 - *ber_target) / (*n * delay));
        }
    });
}

// ----------------------------------------------------------------- oracle

void setup_oracle(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "oracle", "Brownian walker first-passage histogram and capture check");
    auto flags = std::make_shared<ChannelFlags>();
    auto walk = std::make_shared<WalkFlags>();
    auto walkers = std::make_shared<std::uint64_t>(0);
    auto bins = std::make_shared<unsigned>(20);
    auto out = std::make_shared<std::string>();
    auto win = std::make_shared<pipelink::TimeWindow>();
    flags->attach(cmd);
    walk->attach(cmd);
    cmd->add_option("--walkers", *walkers, "number of walkers")->required();
    cmd->add_option("--bins", *bins, "uniform histogram bins (default 20)");
    cmd->add_option("-o,--output", *out, "histogram CSV path");
    auto* t0_opt = cmd->add_option("--win-t0", win->start_t,
                                   "capture window start [s]");
    auto* tau_opt = cmd->add_option("--win-tau", win->duration_tau,
                                    "capture window length [s]");
    t0_opt->needs(tau_opt);
    tau_opt->needs(t0_opt);
    cmd->callback([flags, walk, walkers, bins, out, win, tau_opt] {
        pipelink::WalkConfig cfg;
        cfg.channel = flags->params;
        cfg.step_dt = walk->dt;
        cfg.walker_count = *walkers;
        cfg.rng_seed = walk->seed;
        cfg.workers = walk->workers;
        if (walk->horizon > 0.0) {
            cfg.horizon_t = walk->horizon;
        } else {
            if (flags->params.drift_v != 0.0)
                throw pipelink::ValidationError(
                    "oracle: --horizon is required when --v is nonzero");
            cfg.horizon_t = 2.0 * pipelink::zero_drift_peak_time(flags->params);
        }
        if (*bins < 1)
            throw pipelink::ValidationError("oracle: --bins must be >= 1");

        std::vector<double> uniform(*bins + 1);
        for (unsigned i = 0; i <= *bins; ++i)
            uniform[i] = cfg.horizon_t * static_cast<double>(i)
                         / static_cast<double>(*bins);

        // One walker pass serves both artifacts: window edges are spliced
        // into the bin grid, and the published histogram re-merges the split
        // bins, so the CSV is identical with or without a capture window.
        const bool with_window = tau_opt->count() > 0;
        std::vector<double> edges = uniform;
        if (with_window) {
            win->validate();
            if (win->end_t() > cfg.horizon_t * (1.0 + 1e-9))
                throw pipelink::ValidationError(
                    "oracle: capture window must lie within [0, horizon]");
            for (const double e : {win->start_t, win->end_t()})
                if (std::find(edges.begin(), edges.end(), e) == edges.end())
                    edges.insert(
                        std::upper_bound(edges.begin(), edges.end(), e), e);
        }
        const auto fine = pipelink::simulate_first_passage(cfg, edges);

        pipelink::FirstPassageHistogram hist;
        hist.bin_edges = uniform;
        hist.counts.assign(*bins, 0);
        hist.absorbed_total = fine.absorbed_total;
        hist.walker_count = fine.walker_count;
        std::uint64_t window_count = 0;
        for (std::size_t i = 0; i < fine.counts.size(); ++i) {
            const auto slot = static_cast<std::size_t>(
                std::upper_bound(uniform.begin(), uniform.end(),
                                 fine.bin_edges[i])
                - uniform.begin() - 1);
            hist.counts[std::min<std::size_t>(slot, *bins - 1)] += fine.counts[i];
            if (with_window && fine.bin_edges[i] >= win->start_t
                && fine.bin_edges[i + 1] <= win->end_t())
                window_count += fine.counts[i];
        }

        const std::string header =
            std::string("pipelink ") + pipelink::kVersion + " | oracle | "
            + flags->describe() + " walkers=" + std::to_string(*walkers)
            + " dt=" + fd(cfg.resolved_step_dt()) + " horizon=" + fd(cfg.horizon_t)
            + " seed=" + std::to_string(walk->seed)
            + " workers=" + std::to_string(walk->workers)
            + " bins=" + std::to_string(*bins);
        if (!out->empty()) {
            std::ofstream os = open_output(*out);
            pipelink::write_histogram_csv(os, hist, header);
        }

        print_kv("absorbed_fraction", hist.absorbed_fraction());
        if (with_window) {
            const double emp = static_cast<double>(window_count)
                               / static_cast<double>(hist.walker_count);
            print_kv("capture_empirical", emp);
            const double sigma = std::sqrt(
                std::max(emp * (1.0 - emp), 1e-12)
                / static_cast<double>(cfg.walker_count));
            print_kv("capture_tolerance", 3.0 * sigma + 0.005);
            if (flags->params.drift_v == 0.0) {
                const double analytic =
                    pipelink::windowed_capture(flags->params, *win)
                    / flags->params.molecules_m;
                print_kv("capture_analytic", analytic);
            }
        }
    });
}

// --------------------------------------------------------------- simulate

void setup_simulate(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "simulate", "Monte Carlo on-off-keyed link with intersymbol interference");
    auto flags = std::make_shared<ChannelFlags>();
    auto walk = std::make_shared<WalkFlags>();
    auto sched = std::make_shared<pipelink::EmissionSchedule>();
    auto pol = std::make_shared<pipelink::SamplingPolicy>();
    auto bits_str = std::make_shared<std::string>();
    auto threshold = std::make_shared<double>(0.0);
    auto out = std::make_shared<std::string>();
    flags->attach(cmd);
    walk->attach(cmd);
    cmd->add_option("--bits", *bits_str, "bit pattern, e.g. 10110")->required();
    cmd->add_option("--period", sched->symbol_period, "symbol period [s]")->required();
    cmd->add_option("--spray", sched->spray_duration,
                    "emission spray duration [s] (default 0.5)");
    cmd->add_option("--T", pol->peak_arrival_T, "window start [s]")->required();
    cmd->add_option("--tau", pol->delay_spread_tau, "delay spread [s]")->required();
    cmd->add_option("--n", pol->multiplier_n, "window multiplier (default 1)");
    cmd->add_option("--threshold", *threshold,
                    "detector count threshold (default: half expected capture)");
    cmd->add_option("-o,--output", *out, "per-symbol CSV path");
    cmd->callback([flags, walk, sched, pol, bits_str, threshold, out] {
        sched->bits = parse_bits(*bits_str);
        const double last_window_end =
            static_cast<double>(sched->bits.size() - 1) * sched->symbol_period
            + pol->peak_arrival_T + pol->window_length();

        pipelink::WalkConfig cfg;
        cfg.channel = flags->params;
        cfg.step_dt = walk->dt;
        cfg.horizon_t = walk->horizon > 0.0 ? walk->horizon : last_window_end;
        cfg.walker_count = std::max<std::uint64_t>(
            1, static_cast<std::uint64_t>(std::llround(flags->params.molecules_m)));
        cfg.rng_seed = walk->seed;
        cfg.workers = walk->workers;

        double thr = *threshold;
        if (thr <= 0.0)
            thr = pipelink::default_detector_threshold(flags->params, *pol);

        const auto result = pipelink::simulate_ook_link(*sched, *pol, thr, cfg);

        if (!out->empty()) {
            const std::string header =
                std::string("pipelink ") + pipelink::kVersion + " | simulate | "
                + flags->describe() + " bits=" + *bits_str
                + " period=" + fd(sched->symbol_period)
                + " spray=" + fd(sched->spray_duration)
                + " T=" + fd(pol->peak_arrival_T)
                + " tau=" + fd(pol->delay_spread_tau)
                + " n=" + fd(pol->multiplier_n) + " threshold=" + fd(thr)
                + " dt=" + fd(cfg.resolved_step_dt())
                + " horizon=" + fd(cfg.horizon_t)
                + " seed=" + std::to_string(walk->seed)
                + " workers=" + std::to_string(walk->workers);
            std::ofstream os = open_output(*out);
            pipelink::write_symbol_csv(os, result.symbols, header);
        }
        print_kv("empirical_ber", result.empirical_ber);
    });
}

// ---------------------------------------------------------------- dataset

void setup_dataset(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "dataset", "export the embedded measurement campaign as CSV");
    auto out = std::make_shared<std::string>();
    cmd->add_option("-o,--output", *out, "CSV path (default: stdout)");
    cmd->callback([out] {
        const auto data = pipelink::builtin_dataset();
        const std::string header = std::string("pipelink ") + pipelink::kVersion
                                   + " | dataset | builtin measurement campaign";
        if (out->empty()) {
            pipelink::write_dataset_csv(std::cout, data, header);
        } else {
            std::ofstream os = open_output(*out);
            pipelink::write_dataset_csv(os, data, header);
        }
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pipelink: molecular and radio link analysis for confined pipe "
                 "networks"};
    app.set_version_flag("--version",
                         std::string("pipelink ") + pipelink::kVersion);
    app.set_config("--config", "", "read options from an INI config file");
    app.require_subcommand(1);

    setup_capture(app);
    setup_ber(app);
    setup_rate(app);
    setup_delay_spread(app);
    setup_fit(app);
    setup_predict(app);
    setup_oracle(app);
    setup_simulate(app);
    setup_dataset(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const pipelink::NoSignalError& e) {
        std::cerr << "no signal: " << e.what() << '\n';
        return 3;
    } catch (const pipelink::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const pipelink::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
