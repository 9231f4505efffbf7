#include "gtsp/metrics.hpp"

#include "gtsp/errors.hpp"

#include <cctype>
#include <string>

namespace gtsp {

EventCounts parse_event_log(std::string_view events) {
    EventCounts counts;
    for (char ch : events) {
        switch (ch) {
        case 'T':
            ++counts.tc;
            break;
        case 'F':
            ++counts.pa;
            break;
        case 'S':
            ++counts.pa;
            ++counts.ps;
            break;
        default:
            if (std::isspace(static_cast<unsigned char>(ch)))
                break;
            throw MalformedLog(std::string("unexpected event symbol '") + ch + "'");
        }
    }
    return counts;
}

Rates psr_tcr(const EventCounts& counts) {
    if (counts.pa <= 0)
        throw NoAttempts("no pick attempts recorded");
    const auto pa = static_cast<double>(counts.pa);
    return {static_cast<double>(counts.ps) / pa, 1.0 - static_cast<double>(counts.tc) / pa};
}

double beta_tc_score(const EventCounts& counts, double beta) {
    if (!(beta >= 0.0))
        throw ConfigError("beta must be nonnegative");
    const Rates r = psr_tcr(counts);
    if (beta == 0.0)
        return r.psr;
    const double b2 = beta * beta;
    const double denom = b2 * r.psr + r.tcr;
    if (denom == 0.0)
        return 0.0;
    return (1.0 + b2) * r.psr * r.tcr / denom;
}

double throughput(const EventCounts& counts, double pick_time, double tc_time) {
    if (counts.pa <= 0)
        throw NoAttempts("no pick attempts recorded");
    if (!(pick_time > 0.0) || !(tc_time > 0.0))
        throw ConfigError("pick and tool-change times must be positive");
    const double seconds = static_cast<double>(counts.pa) * pick_time +
                           static_cast<double>(counts.tc) * tc_time;
    return 3600.0 * static_cast<double>(counts.ps) / seconds;
}

double advantage(double v_exact, double v_sts) {
    return v_exact - v_sts;
}

} // namespace gtsp
