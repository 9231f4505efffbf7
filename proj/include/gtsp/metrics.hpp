#pragma once

#include <string_view>

namespace gtsp {

/// Tool changes, pick attempts and pick successes of one episode.
struct EventCounts {
    long tc = 0;
    long pa = 0;
    long ps = 0;

    EventCounts& operator+=(const EventCounts& o) {
        tc += o.tc;
        pa += o.pa;
        ps += o.ps;
        return *this;
    }
    friend bool operator==(const EventCounts&, const EventCounts&) = default;
};

/// Counts T (tool change), F (pick fail) and S (pick success) symbols.
/// Whitespace is skipped; any other symbol raises MalformedLog.
EventCounts parse_event_log(std::string_view events);

struct Rates {
    double psr = 0.0; ///< PS / PA
    double tcr = 0.0; ///< 1 - TC / PA
};

/// Throws NoAttempts when pa == 0.
Rates psr_tcr(const EventCounts& counts);

/// (1 + beta^2) PSR TCR / (beta^2 PSR + TCR); 0 when PSR = TCR = 0.
double beta_tc_score(const EventCounts& counts, double beta);

/// Pick successes per hour for the given per-attempt and per-change times.
double throughput(const EventCounts& counts, double pick_time, double tc_time);

/// Return of the exact plan minus the return of the STS plan.
double advantage(double v_exact, double v_sts);

/// Opportunity-cost weight used by the bench harness.
inline constexpr double kDefaultBeta = 0.33;

} // namespace gtsp
