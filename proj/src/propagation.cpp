#include "pipelink/propagation.hpp"

#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

namespace pipelink {

void PipeTopology::validate() const {
    if (!std::isfinite(total_length) || total_length <= 0.0)
        throw ValidationError("topology: total_length must be finite and > 0");
    if (bend_count < 0)
        throw ValidationError("topology: bend_count must be >= 0");
}

void MeasurementRecord::validate() const {
    topology.validate();
    if (rssi_dbm && (!std::isfinite(*rssi_dbm) || *rssi_dbm < kReceiverSensitivityDbm))
        throw ValidationError(
            "record: a present rssi_dbm must be at or above receiver sensitivity");
    if (!std::isfinite(rssi_sd) || rssi_sd < 0.0)
        throw ValidationError("record: rssi_sd must be finite and >= 0");
    if (delay_spread_s && (!std::isfinite(*delay_spread_s) || *delay_spread_s <= 0.0))
        throw ValidationError("record: a present delay_spread_s must be > 0");
    if (!std::isfinite(delay_sd) || delay_sd < 0.0)
        throw ValidationError("record: delay_sd must be finite and >= 0");
}

void RadioModel::validate() const {
    if (!std::isfinite(rssi_intercept_dbm))
        throw ValidationError("radio model: intercept must be finite");
    if (!std::isfinite(slope_db_per_m) || slope_db_per_m >= 0.0)
        throw ValidationError("radio model: slope_db_per_m must be negative");
    if (!std::isfinite(first_bend_loss_db) || first_bend_loss_db > 0.0)
        throw ValidationError("radio model: first_bend_loss_db must be <= 0");
    if (!std::isfinite(sensitivity_dbm))
        throw ValidationError("radio model: sensitivity_dbm must be finite");
}

void MolecularModel::validate() const {
    if (!std::isfinite(tau_intercept_s) || tau_intercept_s < 0.0)
        throw ValidationError("molecular model: tau_intercept_s must be >= 0");
    if (!std::isfinite(slope_s_per_m) || slope_s_per_m <= 0.0)
        throw ValidationError("molecular model: slope_s_per_m must be positive");
    if (!std::isfinite(bend_factor) || bend_factor < 1.0)
        throw ValidationError("molecular model: bend_factor must be >= 1");
    if (!std::isfinite(bend_factor_unclamped) || bend_factor_unclamped <= 0.0)
        throw ValidationError("molecular model: bend_factor_unclamped must be > 0");
}

namespace {

MeasurementRecord record(std::string shape, double length, int bends, Endpoints ends,
                         bool pipe, std::optional<double> rssi, double rssi_sd,
                         std::optional<double> delay, double delay_sd) {
    MeasurementRecord r;
    r.topology = PipeTopology{length, bends, std::move(shape), ends, pipe};
    r.rssi_dbm = rssi;
    r.rssi_sd = rssi_sd;
    r.delay_spread_s = delay;
    r.delay_sd = delay_sd;
    return r;
}

constexpr auto kNone = std::nullopt;

bool is_pipe_regime(const PipeTopology& t) {
    return t.endpoints == Endpoints::sealed_tanks && t.pipe_connected;
}

void require_pipe_regime(const PipeTopology& t, const char* op) {
    t.validate();
    if (!is_pipe_regime(t))
        throw UnsupportedRegimeError(std::string(op)
            + ": calibrated for sealed-tank, pipe-connected topologies only");
}

/// Plain least squares y = a + b*x over the given points.
struct LineFit {
    double intercept;
    double slope;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys,
                      const char* what) {
    const auto n = static_cast<double>(xs.size());
    if (xs.size() < 2)
        throw ValidationError(std::string(what) + ": need at least 2 points to fit");
    const double x_min = *std::min_element(xs.begin(), xs.end());
    const double x_max = *std::max_element(xs.begin(), xs.end());
    if (x_max - x_min <= 0.0)
        throw ValidationError(std::string(what)
                              + ": fit points must span distinct lengths");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    return {intercept, slope};
}

} // namespace

std::vector<MeasurementRecord> builtin_dataset() {
    std::vector<MeasurementRecord> rows;
    rows.reserve(12);
    // Baseline scenarios: no pipe (or no tanks at all).
    rows.push_back(record("Free Space", 4.0, 0, Endpoints::free_space, false,
                          -70.0, 1.0, 17.0, 3.0));
    rows.push_back(record("1 Sealed Tank", 2.5, 0, Endpoints::sealed_tanks, false,
                          kNone, 0.0, kNone, 0.0));
    rows.push_back(record("2 Sealed Tanks", 1.0, 0, Endpoints::sealed_tanks, false,
                          kNone, 0.0, kNone, 0.0));
    rows.push_back(record("2 Open Tanks", 4.0, 0, Endpoints::open_tanks, false,
                          -90.0, 1.0, 65.0, 11.0));
    // Sealed-tank pipe runs.
    rows.push_back(record("Straight", 3.6, 0, Endpoints::sealed_tanks, true,
                          -79.0, 1.0, 3.57, 0.4));
    rows.push_back(record("L-Shape", 3.7, 1, Endpoints::sealed_tanks, true,
                          -92.0, 0.0, 4.29, 0.3));
    rows.push_back(record("L-Shape", 4.8, 1, Endpoints::sealed_tanks, true,
                          kNone, 0.0, 6.24, 0.5));
    rows.push_back(record("Z-Shape", 3.8, 2, Endpoints::sealed_tanks, true,
                          -93.0, 3.0, 9.07, 2.0));
    rows.push_back(record("U-Shape", 3.9, 2, Endpoints::sealed_tanks, true,
                          kNone, 0.0, 8.81, 1.1));
    rows.push_back(record("Short", 1.3, 0, Endpoints::sealed_tanks, true,
                          -62.0, 1.0, 2.20, 0.2));
    rows.push_back(record("Medium", 2.5, 0, Endpoints::sealed_tanks, true,
                          -71.0, 1.0, 2.91, 0.4));
    rows.push_back(record("Medium", 2.6, 1, Endpoints::sealed_tanks, true,
                          -87.0, 1.0, 4.45, 0.4));
    return rows;
}

std::optional<double> predict_rssi(const RadioModel& m, const PipeTopology& topo) {
    m.validate();
    require_pipe_regime(topo, "predict_rssi");
    const double rssi = m.rssi_intercept_dbm + m.slope_db_per_m * topo.total_length
                        + (topo.bend_count >= 1 ? m.first_bend_loss_db : 0.0);
    if (rssi < m.sensitivity_dbm)
        return std::nullopt;
    return rssi;
}

double predict_delay_spread(const MolecularModel& m, const PipeTopology& topo) {
    m.validate();
    require_pipe_regime(topo, "predict_delay_spread");
    return (m.tau_intercept_s + m.slope_s_per_m * topo.total_length)
           * std::pow(m.bend_factor, topo.bend_count);
}

RadioModel fit_radio(std::span<const MeasurementRecord> data) {
    std::vector<double> xs, ys;
    std::vector<const MeasurementRecord*> one_bend;
    for (const auto& r : data) {
        r.validate();
        if (!is_pipe_regime(r.topology) || !r.rssi_dbm) continue;
        if (r.topology.bend_count == 0) {
            xs.push_back(r.topology.total_length);
            ys.push_back(*r.rssi_dbm);
        } else if (r.topology.bend_count == 1) {
            one_bend.push_back(&r);
        }
    }
    const LineFit line = least_squares(xs, ys, "fit_radio straight rows");
    if (one_bend.empty())
        throw ValidationError("fit_radio: need at least one uncensored one-bend row");

    double residual_sum = 0.0;
    for (const auto* r : one_bend)
        residual_sum += *r->rssi_dbm
                        - (line.intercept + line.slope * r->topology.total_length);
    RadioModel model;
    model.rssi_intercept_dbm = line.intercept;
    model.slope_db_per_m = line.slope;
    model.first_bend_loss_db = residual_sum / static_cast<double>(one_bend.size());
    model.validate();
    return model;
}

MolecularModel fit_molecular(std::span<const MeasurementRecord> data) {
    std::vector<double> xs, ys;
    std::vector<const MeasurementRecord*> bent;
    for (const auto& r : data) {
        r.validate();
        if (!is_pipe_regime(r.topology) || !r.delay_spread_s) continue;
        if (r.topology.bend_count == 0) {
            xs.push_back(r.topology.total_length);
            ys.push_back(*r.delay_spread_s);
        } else {
            bent.push_back(&r);
        }
    }
    const LineFit line = least_squares(xs, ys, "fit_molecular straight rows");
    if (bent.empty())
        throw ValidationError("fit_molecular: need at least one bent row with a delay");

    // Per-row stretch estimate (tau / straight-line tau)^(1/bends), combined
    // as a geometric mean so one- and two-bend rows weigh in comparably.
    double log_sum = 0.0;
    for (const auto* r : bent) {
        const double base = line.intercept + line.slope * r->topology.total_length;
        if (base <= 0.0)
            throw ValidationError("fit_molecular: straight-line tau must stay positive "
                                  "at every bent row's length");
        log_sum += std::log(*r->delay_spread_s / base)
                   / static_cast<double>(r->topology.bend_count);
    }
    MolecularModel model;
    model.tau_intercept_s = line.intercept;
    model.slope_s_per_m = line.slope;
    model.bend_factor_unclamped = std::exp(log_sum / static_cast<double>(bent.size()));
    model.bend_factor = std::clamp(model.bend_factor_unclamped, 1.35, 1.5);
    model.validate();
    return model;
}

Feasibility classify_feasibility(const RadioModel& rm, const MolecularModel& mm,
                                 const PipeTopology& topo) {
    mm.validate();
    topo.validate();
    if (topo.endpoints == Endpoints::sealed_tanks && !topo.pipe_connected)
        return {false, false}; // tank walls block both media without a pipe
    require_pipe_regime(topo, "classify_feasibility");
    return {predict_rssi(rm, topo).has_value(), true};
}

void write_dataset_csv(std::ostream& os, std::span<const MeasurementRecord> data,
                       const std::string& header_comment) {
    detail::write_comment(os, header_comment);
    os << "shape,length_m,bends,rssi_dbm,rssi_sd,delay_s,delay_sd\n";
    for (const auto& r : data) {
        os << r.topology.shape_label << ','
           << detail::format_double(r.topology.total_length) << ','
           << r.topology.bend_count << ',';
        if (r.rssi_dbm)
            os << detail::format_double(*r.rssi_dbm) << ','
               << detail::format_double(r.rssi_sd) << ',';
        else
            os << "NS,NS,";
        if (r.delay_spread_s)
            os << detail::format_double(*r.delay_spread_s) << ','
               << detail::format_double(r.delay_sd) << '\n';
        else
            os << "NS,NS\n";
    }
}

std::vector<MeasurementRecord> read_dataset_csv(std::istream& is) {
    std::vector<MeasurementRecord> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;

    const auto censored_or_value = [](const std::string& field, const char* what,
                                      std::size_t ln) -> std::optional<double> {
        if (field == "NS") return std::nullopt;
        return detail::parse_double_field(field, what, ln);
    };

    while (std::getline(is, line)) {
        ++line_no;
        const std::string row = detail::trim(line);
        if (row.empty() || row.front() == '#') continue;
        if (!header_seen) {
            if (row != "shape,length_m,bends,rssi_dbm,rssi_sd,delay_s,delay_sd")
                throw ValidationError("dataset csv: unexpected header line");
            header_seen = true;
            continue;
        }
        const auto fields = detail::split_csv_row(row);
        if (fields.size() != 7)
            throw ValidationError("dataset csv: expected 7 fields on line "
                                  + std::to_string(line_no));

        MeasurementRecord r;
        r.topology.shape_label = fields[0];
        r.topology.total_length =
            detail::parse_double_field(fields[1], "length_m", line_no);
        r.topology.bend_count = static_cast<int>(
            detail::parse_double_field(fields[2], "bends", line_no));
        if (fields[0] == "Free Space") {
            r.topology.endpoints = Endpoints::free_space;
            r.topology.pipe_connected = false;
        } else if (fields[0] == "1 Sealed Tank" || fields[0] == "2 Sealed Tanks") {
            r.topology.endpoints = Endpoints::sealed_tanks;
            r.topology.pipe_connected = false;
        } else if (fields[0] == "2 Open Tanks") {
            r.topology.endpoints = Endpoints::open_tanks;
            r.topology.pipe_connected = false;
        } else {
            r.topology.endpoints = Endpoints::sealed_tanks;
            r.topology.pipe_connected = true;
        }
        r.rssi_dbm = censored_or_value(fields[3], "rssi_dbm", line_no);
        r.rssi_sd = fields[4] == "NS"
                        ? 0.0
                        : detail::parse_double_field(fields[4], "rssi_sd", line_no);
        r.delay_spread_s = censored_or_value(fields[5], "delay_s", line_no);
        r.delay_sd = fields[6] == "NS"
                         ? 0.0
                         : detail::parse_double_field(fields[6], "delay_sd", line_no);
        r.validate();
        rows.push_back(std::move(r));
    }
    if (!header_seen)
        throw ValidationError("dataset csv: missing header line");
    return rows;
}

} // namespace pipelink
