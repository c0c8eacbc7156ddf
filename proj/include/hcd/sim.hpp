#pragma once

// Discrete-event simulation of the hybrid distribution protocol with a
// double-entry ledger. Every monetary transfer is one LedgerEntry; party
// nets are folded from the ledger, so the closed-form benefits can be
// checked against an independent accounting of the same protocol.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hcd/benefits.hpp"

namespace hcd {

using Tick = std::int64_t;
using UserId = std::int64_t;

enum class Role { Premium, Standard };

std::string_view to_string(Role role);

struct UserAgent {
    UserId id = 0;
    Role role = Role::Standard;
    bool owns_content = false;
    bool designated_sharer = false;

    friend bool operator==(const UserAgent&, const UserAgent&) = default;
};

struct RequestEvent {
    Tick time = 0;
    UserId user = 0;

    friend bool operator==(const RequestEvent&, const RequestEvent&) = default;
};

struct Party {
    enum class Kind { Cp, Np, EnergySink, User };

    Kind kind = Kind::Cp;
    UserId user = 0;

    static Party cp() { return {Kind::Cp, 0}; }
    static Party np() { return {Kind::Np, 0}; }
    static Party energy_sink() { return {Kind::EnergySink, 0}; }
    static Party of(UserId id) { return {Kind::User, id}; }

    friend auto operator<=>(const Party&, const Party&) = default;
};

/// "CP", "NP", "EnergySink" or "u<id>".
std::string to_string(const Party& party);

enum class Reason { ContentPricePremium, ContentPriceStandard, NpDeliveryFee, ShareReward, EnergyCost };

std::string_view to_string(Reason reason);

template <Scalar S>
struct LedgerEntry {
    Tick time = 0;
    Party payer;
    Party payee;
    S amount{};
    Reason reason = Reason::ContentPriceStandard;

    friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

enum class MessageKind { AvailabilityQuery, NegativeResponse, PositiveResponse, CpRequest, CpDelivery, PeerDelivery };

std::string_view to_string(MessageKind kind);

struct Message {
    Tick time = 0;
    MessageKind kind = MessageKind::CpRequest;
    Party from;
    Party to;

    friend bool operator==(const Message&, const Message&) = default;
};

template <Scalar S>
struct SimInput {
    PriceSchedule<S> schedule;
    Count f = 1;
    std::vector<UserAgent> agents;
    std::vector<RequestEvent> requests;

    friend bool operator==(const SimInput&, const SimInput&) = default;
};

template <Scalar S>
struct SimOutcome {
    SimInput<S> input;
    std::vector<LedgerEntry<S>> ledger;
    std::map<Party, S> net;
    Count server_deliveries = 0;
    Count shares = 0;
    std::vector<Message> messages;
    std::optional<UserId> designated_sharer;

    /// Party nets using only ledger entries with time <= tick.
    std::map<Party, S> nets_through(Tick tick) const
    {
        std::map<Party, S> out;
        for (const auto& e : ledger) {
            if (e.time > tick) continue;
            out[e.payer] -= e.amount;
            out[e.payee] += e.amount;
        }
        return out;
    }

    S net_of(const Party& party) const
    {
        auto it = net.find(party);
        return it == net.end() ? S(0) : it->second;
    }

    friend bool operator==(const SimOutcome&, const SimOutcome&) = default;
};

namespace detail {

template <Scalar S>
void post(SimOutcome<S>& out, Tick time, Party payer, Party payee, const S& amount, Reason reason)
{
    // Zero transfers are not recorded; every entry moves a positive amount.
    if (!(amount > S(0))) return;
    out.ledger.push_back({time, payer, payee, amount, reason});
    out.net[payer] -= amount;
    out.net[payee] += amount;
}

void validate_sim_input(const std::vector<UserAgent>& agents, const std::vector<RequestEvent>& requests);

}  // namespace detail

/// Runs the distribution protocol.
///
/// Requests are processed by (time, user id). A premium requester is served
/// by the CP. A standard requester queries every other standard agent, sees
/// ownership as it stood at the end of the previous tick, and is served by
/// the designated sharer when that agent already holds the content;
/// otherwise the CP serves it and it becomes the designated sharer if there
/// is none yet.
template <Scalar S>
SimOutcome<S> run(const PriceSchedule<S>& schedule, Count f, std::vector<UserAgent> agents,
                  std::vector<RequestEvent> requests)
{
    detail::validate_sim_input(agents, requests);

    SimOutcome<S> out;
    out.input = SimInput<S>{schedule, f, agents, requests};
    const S size = from_count<S>(f);

    std::sort(agents.begin(), agents.end(), [](const auto& l, const auto& r) { return l.id < r.id; });
    std::map<UserId, const UserAgent*> by_id;
    std::set<UserId> owners;
    for (const auto& a : agents) {
        by_id[a.id] = &a;
        if (a.owns_content) owners.insert(a.id);
        if (a.designated_sharer) out.designated_sharer = a.id;
    }
    std::stable_sort(requests.begin(), requests.end(),
                     [](const auto& l, const auto& r) { return std::tie(l.time, l.user) < std::tie(r.time, r.user); });

    std::set<UserId> visible = owners;  // ownership as of the end of the previous tick
    std::optional<Tick> current_tick;
    for (const RequestEvent& req : requests) {
        if (current_tick != req.time) {
            visible = owners;
            current_tick = req.time;
        }
        const UserAgent& agent = *by_id.at(req.user);
        const Party requester = Party::of(agent.id);

        if (agent.role == Role::Premium) {
            out.messages.push_back({req.time, MessageKind::CpRequest, requester, Party::cp()});
            out.messages.push_back({req.time, MessageKind::CpDelivery, Party::cp(), requester});
            detail::post(out, req.time, requester, Party::cp(), size * schedule.p_b, Reason::ContentPricePremium);
            detail::post(out, req.time, Party::cp(), Party::np(), size * schedule.p_n, Reason::NpDeliveryFee);
            ++out.server_deliveries;
            owners.insert(agent.id);
            continue;
        }

        for (const auto& other : agents) {
            if (other.role != Role::Standard || other.id == agent.id) continue;
            out.messages.push_back({req.time, MessageKind::AvailabilityQuery, requester, Party::of(other.id)});
        }
        for (const auto& other : agents) {
            if (other.role != Role::Standard || other.id == agent.id) continue;
            const MessageKind answer =
                visible.contains(other.id) ? MessageKind::PositiveResponse : MessageKind::NegativeResponse;
            out.messages.push_back({req.time, answer, Party::of(other.id), requester});
        }

        const bool peer_serves = out.designated_sharer && *out.designated_sharer != agent.id &&
                                 visible.contains(*out.designated_sharer);
        detail::post(out, req.time, requester, Party::cp(), size * schedule.p_std, Reason::ContentPriceStandard);
        if (peer_serves) {
            const Party sharer = Party::of(*out.designated_sharer);
            out.messages.push_back({req.time, MessageKind::PeerDelivery, sharer, requester});
            detail::post(out, req.time, Party::cp(), sharer, size * schedule.p_u, Reason::ShareReward);
            detail::post(out, req.time, sharer, Party::energy_sink(), size * schedule.s, Reason::EnergyCost);
            ++out.shares;
        } else {
            out.messages.push_back({req.time, MessageKind::CpRequest, requester, Party::cp()});
            out.messages.push_back({req.time, MessageKind::CpDelivery, Party::cp(), requester});
            detail::post(out, req.time, Party::cp(), Party::np(), size * schedule.p_n, Reason::NpDeliveryFee);
            ++out.server_deliveries;
            if (!out.designated_sharer) out.designated_sharer = agent.id;
        }
        owners.insert(agent.id);
    }
    return out;
}

/// Re-runs the recorded inputs; the result must equal the original outcome.
template <Scalar S>
SimOutcome<S> replay(const SimOutcome<S>& outcome)
{
    const auto& in = outcome.input;
    return run(in.schedule, in.f, in.agents, in.requests);
}

/// Cohort (x, y, f) implied by a run's agents.
template <Scalar S>
Cohort cohort_of(const SimOutcome<S>& outcome)
{
    Count y = 0;
    for (const auto& a : outcome.input.agents) y += a.role == Role::Premium ? 1 : 0;
    return Cohort{static_cast<Count>(outcome.input.agents.size()), y, outcome.input.f};
}

/// Compares the ledger of a run in which every agent requested exactly once
/// against the closed-form raw benefits and load reduction. Returns one
/// message per violated equality; empty means the run matches.
template <Scalar S>
std::vector<std::string> check_against_formulas(const PriceSchedule<S>& p, const Cohort& cohort,
                                                const SimOutcome<S>& outcome)
{
    std::vector<std::string> bad;
    auto expect = [&](const std::string& what, const S& got, const S& want) {
        if (!same_value(got, want)) {
            bad.push_back(what + ": ledger " + format_scalar(got) + " != formula " + format_scalar(want));
        }
    };

    const S f = from_count<S>(cohort.f);
    expect("CP net", outcome.net_of(Party::cp()), ben_cp_raw(p, cohort));

    // Only a sharer that actually served someone has the sharer's benefit.
    const UserId sharer = outcome.shares > 0 ? outcome.designated_sharer.value_or(-1) : -1;
    for (const auto& a : outcome.input.agents) {
        const S net = outcome.net_of(Party::of(a.id));
        const std::string who = to_string(Party::of(a.id));
        if (a.id == sharer) {
            expect("sharer " + who + " net", net, ben_sharer_raw(p, cohort));
        } else if (a.role == Role::Premium) {
            expect("premium " + who + " net", net, -f * p.p_b);
        } else {
            expect("standard " + who + " net", net, -f * p.p_std);
        }
    }

    S total(0);
    for (const auto& [party, value] : outcome.net) total += value;
    expect("sum of nets", total, S(0));

    const S lr = from_count<S>(cohort.x - outcome.server_deliveries) / from_count<S>(cohort.x);
    expect("load reduction", lr, load_reduction<S>(cohort));
    return bad;
}

template <Scalar S>
struct OracleReport {
    Cohort cohort;
    std::uint64_t seed = 0;
    SimOutcome<S> outcome;
    std::vector<std::string> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Agents 1..x with y of them premium, chosen and ordered at random from
/// the seed, requesting on distinct ticks 1..x.
template <Scalar S>
std::pair<std::vector<UserAgent>, std::vector<RequestEvent>> random_population(const Cohort& cohort,
                                                                                 std::uint64_t seed)
{
    require_valid(cohort);
    std::mt19937_64 rng(seed);
    std::vector<UserId> ids(static_cast<std::size_t>(cohort.x));
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<UserId>(i + 1);

    std::vector<UserId> premium_pick = ids;
    std::shuffle(premium_pick.begin(), premium_pick.end(), rng);
    const std::set<UserId> premium(premium_pick.begin(), premium_pick.begin() + cohort.y);
    std::vector<UserAgent> agents;
    for (UserId id : ids) agents.push_back({id, premium.contains(id) ? Role::Premium : Role::Standard, false, false});

    std::vector<UserId> order = ids;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<RequestEvent> requests;
    for (std::size_t i = 0; i < order.size(); ++i) requests.push_back({static_cast<Tick>(i + 1), order[i]});
    return {agents, requests};
}

template <Scalar S>
OracleReport<S> oracle_check(const PriceSchedule<S>& p, const Cohort& cohort, std::uint64_t seed)
{
    auto [agents, requests] = random_population<S>(cohort, seed);
    OracleReport<S> report{cohort, seed, run(p, cohort.f, std::move(agents), std::move(requests)), {}};
    report.mismatches = check_against_formulas(p, cohort, report.outcome);
    return report;
}

}  // namespace hcd
