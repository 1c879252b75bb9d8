#pragma once

#include <vector>

#include "spandup/core.hpp"

namespace spandup {

// M/D/1 dimensioning for the mirror-port window. Units are SI throughout:
// seconds, bits, bits per second, packets per second.

struct UtilizationRangeError : Error {
    UtilizationRangeError() : Error("utilization factor must be in [0,1)") {}
};
struct ZeroCapacityError : Error {
    ZeroCapacityError() : Error("link capacity must be positive") {}
};
struct NegativeResidualError : Error {
    NegativeResidualError() : Error("system time decomposition needs s >= x >= 0") {}
};
struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string& what) : Error(what) {}
};

/// Average output-queue length of an M/D/1 system, in packets.
inline double md1_queue_length(double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw UtilizationRangeError{};
    return rho * rho / (2.0 * (1.0 - rho));
}

/// Average time spent in an M/D/1 system (waiting plus service), in seconds.
inline double md1_system_time(double rho, double service_time) {
    if (!(rho >= 0.0 && rho < 1.0)) throw UtilizationRangeError{};
    if (!(service_time > 0.0)) throw InvalidInputError("service time must be positive");
    return (service_time / 2.0) * (2.0 - rho) / (1.0 - rho);
}

/// Deterministic service time of a packet of `length_bits` on a link of
/// `capacity_bps`.
inline double service_time(double length_bits, double capacity_bps) {
    if (!(capacity_bps > 0.0)) throw ZeroCapacityError{};
    if (length_bits < 0.0) throw InvalidInputError("packet length must be non-negative");
    return length_bits / capacity_bps;
}

/// Upper bound on the time a packet can spend at the output port: a full
/// queue of maximum-size packets drained at link speed.
inline double max_system_time(double max_queue_len, double max_packet_bits, double capacity_bps) {
    if (!(capacity_bps > 0.0)) throw ZeroCapacityError{};
    if (!(max_queue_len > 0.0) || !(max_packet_bits > 0.0))
        throw InvalidInputError("queue length and packet length must be positive");
    return max_queue_len * max_packet_bits / capacity_bps;
}

struct DimensionInputs {
    double max_queue_len = 0;                // packets, max(N_q)
    double max_packet_bits = 0;              // max(M)
    double min_capacity_bps = 0;             // min(C)
    std::vector<double> interfering_rates;   // per-port service rates, packets/s
};

/// Recommended time-window size: three times the single-queue bound, to
/// cover switching time and mirror-port queueing as well.
inline double window_size(const DimensionInputs& in) {
    if (!(in.max_queue_len > 0.0) || !(in.max_packet_bits > 0.0))
        throw InvalidInputError("queue length and packet length must be positive");
    if (!(in.min_capacity_bps > 0.0)) throw ZeroCapacityError{};
    return 3.0 * in.max_queue_len * in.max_packet_bits / in.min_capacity_bps;
}

inline double window_size(double max_queue_len, double max_packet_bits, double min_capacity_bps) {
    return window_size(DimensionInputs{max_queue_len, max_packet_bits, min_capacity_bps, {}});
}

/// Expected number of interfering packets falling between the two copies of
/// a duplicate that spends `s_mean` seconds in the system.
inline double expected_packets_between(double s_mean, const std::vector<double>& interfering_rates) {
    if (s_mean < 0.0) throw InvalidInputError("system time must be non-negative");
    double sum = 0.0;
    for (double r : interfering_rates) {
        if (r < 0.0) throw InvalidInputError("interfering rates must be non-negative");
        sum += r;
    }
    return s_mean * sum;
}

/// Splits a measured system time into switching time and queueing time.
inline double decompose_system_time(double s, double x) {
    if (!(s >= x) || !(x >= 0.0)) throw NegativeResidualError{};
    return s - x;
}

// Solved model for one (rho, L, C) operating point.
struct QueueModel {
    double rho = 0;
    double delta_s = 0;    // service time
    double nq_mean = 0;    // average queue length, packets
    double s_mean_s = 0;   // average system time

    static QueueModel solve(double rho, double packet_bits, double capacity_bps) {
        QueueModel m;
        m.rho = rho;
        m.delta_s = service_time(packet_bits, capacity_bps);
        m.nq_mean = md1_queue_length(rho);
        m.s_mean_s = md1_system_time(rho, m.delta_s);
        return m;
    }
};

}  // namespace spandup
