#pragma once

#include "pipelink/errors.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pipelink {

/// What the pipe run terminates in. Radio pathloss through the pipe wall
/// differs drastically between sealed metal tanks, open tanks and free space.
enum class Endpoints : int { sealed_tanks, open_tanks, free_space };

/// RSSI floor below which the receiver reports no signal.
inline constexpr double kReceiverSensitivityDbm = -99.0;

/**
 * Geometry of one transmitter-to-receiver path. The calibrated propagation
 * models cover the sealed-tank, pipe-connected regime; the tank-only baseline
 * scenarios set pipe_connected = false.
 */
struct PipeTopology {
    double total_length = 0.0;  ///< end-to-end path length [m], > 0
    int bend_count = 0;         ///< number of 90-degree bends, >= 0
    std::string shape_label;    ///< free-form label ("Straight", "L-Shape", ...)
    Endpoints endpoints = Endpoints::sealed_tanks;
    bool pipe_connected = true; ///< false: tanks only, no pipe between them

    /// Throws ValidationError unless total_length > 0 and bend_count >= 0.
    void validate() const;
};

/**
 * One measured link: topology plus observed mean RSSI and mean molecular
 * delay spread with their standard deviations. A disengaged optional means
 * the quantity was censored — below receiver sensitivity ("no signal") — not
 * that it is zero.
 */
struct MeasurementRecord {
    PipeTopology topology;
    std::optional<double> rssi_dbm;       ///< mean RSSI; >= sensitivity when present
    double rssi_sd = 0.0;                 ///< RSSI std dev [dB], >= 0
    std::optional<double> delay_spread_s; ///< mean molecular delay spread [s], > 0
    double delay_sd = 0.0;                ///< delay spread std dev [s], >= 0

    /// Throws ValidationError on out-of-range values (present RSSI below
    /// sensitivity, nonpositive delay spread, negative sds, bad topology).
    void validate() const;
};

/**
 * Log-linear radio pathloss through a sealed pipe network:
 *
 *     rssi(L, bends) = intercept + slope * L + (bends >= 1 ? first_bend_loss : 0)
 *
 * Only the first bend costs extra; later bends are already paid for by the
 * added length. Predictions below sensitivity_dbm are reported as censored.
 */
struct RadioModel {
    double rssi_intercept_dbm = 0.0;
    double slope_db_per_m = -1.0;    ///< < 0
    double first_bend_loss_db = 0.0; ///< <= 0
    double sensitivity_dbm = kReceiverSensitivityDbm;

    void validate() const;
};

/**
 * Linear-in-length molecular delay-spread model with a multiplicative
 * per-bend stretch:
 *
 *     tau(L, bends) = (intercept + slope * L) * bend_factor^bends
 *
 * bend_factor is clamped into [1.35, 1.5] when fitted; bend_factor_unclamped
 * preserves the raw geometric-mean estimate for diagnostics.
 */
struct MolecularModel {
    double tau_intercept_s = 0.0;
    double slope_s_per_m = 1.0;         ///< > 0
    double bend_factor = 1.0;           ///< >= 1
    double bend_factor_unclamped = 1.0; ///< raw estimate before clamping

    void validate() const;
};

/// Link feasibility by medium for a topology under both fitted models.
struct Feasibility {
    bool radio_up;      ///< predicted RSSI at or above sensitivity
    bool molecular_up;  ///< molecules arrive through any connected pipe
};

/**
 * The embedded 12-record measurement campaign: four baseline scenarios
 * (free space, tank-only) and eight sealed-tank pipe runs of varying length
 * and bend count. Censored entries appear as disengaged optionals.
 */
std::vector<MeasurementRecord> builtin_dataset();

/**
 * Predicted RSSI for a sealed-tank, pipe-connected topology; disengaged when
 * the prediction falls below model sensitivity. Other endpoint regimes raise
 * UnsupportedRegimeError.
 */
std::optional<double> predict_rssi(const RadioModel& m, const PipeTopology& topo);

/// Predicted molecular delay spread [s]; same regime restrictions as
/// predict_rssi. Always positive for a valid model.
double predict_delay_spread(const MolecularModel& m, const PipeTopology& topo);

/**
 * Least-squares fit of RadioModel against the uncensored sealed-tank pipe
 * records: (intercept, slope) from the straight rows, first_bend_loss as the
 * mean one-bend residual. Needs >= 2 straight rows at distinct lengths and
 * >= 1 uncensored one-bend row (ValidationError otherwise).
 */
RadioModel fit_radio(std::span<const MeasurementRecord> data);

/**
 * Fit of MolecularModel: (intercept, slope) by least squares on the straight
 * rows, bend_factor as the geometric mean of per-row stretch estimates
 * (tau_measured / tau_line)^(1/bends) over bent rows, clamped into
 * [1.35, 1.5]. Same minimum-data requirements as fit_radio.
 */
MolecularModel fit_molecular(std::span<const MeasurementRecord> data);

/**
 * Which media are usable on a topology: sealed-tank pipe runs get the model
 * predictions (molecular is always up through a connected pipe); sealed tanks
 * without a pipe get {false, false}; open/free-space endpoint regimes are not
 * classifiable (UnsupportedRegimeError).
 */
Feasibility classify_feasibility(const RadioModel& rm, const MolecularModel& mm,
                                 const PipeTopology& topo);

/**
 * CSV serialization, one row per record:
 *
 *     shape,length_m,bends,rssi_dbm,rssi_sd,delay_s,delay_sd
 *
 * Censored quantities serialize as the literal token NS in both the value
 * and sd columns. Byte-identical across reruns.
 */
void write_dataset_csv(std::ostream& os, std::span<const MeasurementRecord> data,
                       const std::string& header_comment);

/**
 * Inverse of write_dataset_csv. Endpoint regime is recovered from the shape
 * label: "Free Space" => free space, "1 Sealed Tank"/"2 Sealed Tanks" =>
 * sealed tanks without pipe, "2 Open Tanks" => open tanks; anything else is
 * a sealed-tank pipe run. Malformed rows raise ValidationError.
 */
std::vector<MeasurementRecord> read_dataset_csv(std::istream& is);

} // namespace pipelink
