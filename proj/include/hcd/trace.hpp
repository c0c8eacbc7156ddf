#pragma once

// Session traces: CSV ingestion, a synthetic Zipf generator, per-content
// audiences, and the Monte-Carlo curve of CP benefit against the share of
// premium users.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcd/model.hpp"

namespace hcd {

enum class PremiumOption { Premium, Standard, Unassigned };

std::string_view to_string(PremiumOption option);

using Timestamp = std::chrono::sys_seconds;

/// "2014-07-01T18:30:00Z"
std::string format_timestamp(Timestamp ts);
Timestamp parse_timestamp(std::string_view text);

struct SessionRecord {
    Timestamp timestamp;
    std::string user_id;
    std::string content_id;
    std::int64_t bytes = 1;
    PremiumOption option = PremiumOption::Unassigned;

    friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

inline constexpr std::string_view kTraceHeader = "timestamp,user_id,content_id,bytes,option";

/// Strict parse of a trace CSV; throws ParseError with line and column.
std::vector<SessionRecord> parse_trace(std::istream& in);
void write_trace(std::ostream& out, std::span<const SessionRecord> records);

struct TraceParams {
    std::uint64_t seed = 0;
    Count users = 100;
    Count contents = 10;
    double zipf_exponent = 0.8;
    double premium_prob = 0.0;  ///< per user, not per session
    std::int64_t size_bytes = 1'000'000'000;
    Count sessions_per_user = 10;
};

/// Deterministic for a given seed. Records are sorted by (timestamp, user, content).
std::vector<SessionRecord> generate_trace(const TraceParams& params);

struct ContentCohort {
    std::string content_id;
    std::vector<std::string> viewers;  ///< sorted, distinct
    Count premium_viewers = 0;
    std::int64_t f = 1;  ///< largest session size seen for the content

    Cohort cohort() const { return Cohort{static_cast<Count>(viewers.size()), premium_viewers, f}; }
};

/// One cohort per content id, ordered by content id. A viewer counts as
/// premium when any of its sessions for that content is premium.
std::vector<ContentCohort> extract_cohorts(std::span<const SessionRecord> records);

/// Distinct user ids of a trace, sorted.
std::vector<std::string> user_pool(std::span<const SessionRecord> records);

struct CurvePoint {
    double premium_fraction = 0.0;
    double mean_benefit = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    Count replicates = 0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct CurveParams {
    double n = 2.0;  ///< p_std / p_n
    double r = 2.0;  ///< p_b / p_std
    std::vector<double> grid;
    Count replicates = 200;
    std::uint64_t seed = 0;
};

/// Pool indices made premium in one replicate: the first `count` entries of
/// a uniformly random permutation drawn from (seed, replicate). Samples for
/// a larger count extend those for a smaller one.
std::vector<std::size_t> premium_sample(std::size_t pool_size, std::size_t count, std::uint64_t seed,
                                        Count replicate);

/// For each premium fraction q, makes floor(q |pool|) pool users premium in
/// every replicate, sums the equilibrium CP benefit over all contents in
/// units of f p_n, and reports mean with a normal 95% interval.
std::vector<CurvePoint> mc_benefit_curve(std::span<const std::string> pool, std::span<const ContentCohort> cohorts,
                                         const CurveParams& params);

inline constexpr std::string_view kCurveHeader = "premium_fraction,mean,ci_low,ci_high,replicates";

void write_curve(std::ostream& out, std::span<const CurvePoint> points);

}  // namespace hcd
