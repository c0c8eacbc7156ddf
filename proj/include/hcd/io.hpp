#pragma once

// Text formats: flat key=value configs, simulator scenario files and the
// ledger CSV export.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcd/sim.hpp"

namespace hcd {

/// key -> (value, line number)
struct KeyValues {
    std::map<std::string, std::pair<std::string, std::size_t>> entries;

    std::optional<std::string> get(const std::string& key) const
    {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        return it->second.first;
    }
};

/// Lines of `key=value`; blank lines and `#` comments are skipped.
/// Throws ParseError on a line without '=' or a repeated key.
KeyValues parse_key_values(std::istream& in);

/// Fills the rates present in `kv` (p_n, p_b, p_std, p_u, s) into `schedule`.
template <Scalar S>
void apply_rates(const KeyValues& kv, PriceSchedule<S>& schedule)
{
    const std::pair<const char*, S PriceSchedule<S>::*> fields[] = {
        {"p_n", &PriceSchedule<S>::p_n}, {"p_b", &PriceSchedule<S>::p_b}, {"p_std", &PriceSchedule<S>::p_std},
        {"p_u", &PriceSchedule<S>::p_u}, {"s", &PriceSchedule<S>::s}};
    for (const auto& [key, member] : fields) {
        auto it = kv.entries.find(key);
        if (it == kv.entries.end()) continue;
        try {
            schedule.*member = parse_scalar<S>(it->second.first);
        } catch (const std::exception& e) {
            throw ParseError(it->second.second, 1, std::string(key) + ": " + e.what());
        }
    }
}

std::int64_t parse_count(const std::string& text, std::size_t line, std::size_t column);

/// Raw scenario file: f header, price block, then request and agent lines.
struct ScenarioText {
    Count f = 1;
    KeyValues prices;
    std::vector<UserAgent> agents;
    std::vector<RequestEvent> requests;
};

/// Format:
///
///     f=<bytes>
///     p_n=1
///     p_b=4
///     p_std=2
///     p_u=4          (optional, default 0)
///     s=0.1          (optional, default 0)
///     agent,<id>,<role>[,owns][,sharer]   (optional declarations)
///     <tick>,<user_id>,<role>
///
/// User ids are integers, optionally written with a `u` prefix. Users that
/// only appear in request lines are declared implicitly with that role.
ScenarioText parse_scenario_text(std::istream& in);

template <Scalar S>
PriceSchedule<S> scenario_schedule(const ScenarioText& text)
{
    for (const char* key : {"p_n", "p_b", "p_std"}) {
        if (!text.prices.get(key)) throw ParseError(1, 1, std::string("scenario is missing ") + key);
    }
    PriceSchedule<S> schedule;
    apply_rates(text.prices, schedule);
    return schedule;
}

inline constexpr std::string_view kLedgerHeader = "time,payer,payee,amount,reason";

template <Scalar S>
void write_ledger_csv(std::ostream& out, const SimOutcome<S>& outcome)
{
    out << kLedgerHeader << '\n';
    for (const auto& e : outcome.ledger) {
        out << e.time << ',' << to_string(e.payer) << ',' << to_string(e.payee) << ',' << format_scalar(e.amount)
            << ',' << to_string(e.reason) << '\n';
    }
}

}  // namespace hcd
