#include "hcd/sim.hpp"

namespace hcd {

std::string_view to_string(Role role) { return role == Role::Premium ? "premium" : "standard"; }

std::string to_string(const Party& party)
{
    switch (party.kind) {
    case Party::Kind::Cp: return "CP";
    case Party::Kind::Np: return "NP";
    case Party::Kind::EnergySink: return "EnergySink";
    case Party::Kind::User: return "u" + std::to_string(party.user);
    }
    return "?";
}

std::string_view to_string(Reason reason)
{
    switch (reason) {
    case Reason::ContentPricePremium: return "ContentPricePremium";
    case Reason::ContentPriceStandard: return "ContentPriceStandard";
    case Reason::NpDeliveryFee: return "NpDeliveryFee";
    case Reason::ShareReward: return "ShareReward";
    case Reason::EnergyCost: return "EnergyCost";
    }
    return "?";
}

std::string_view to_string(MessageKind kind)
{
    switch (kind) {
    case MessageKind::AvailabilityQuery: return "AvailabilityQuery";
    case MessageKind::NegativeResponse: return "NegativeResponse";
    case MessageKind::PositiveResponse: return "PositiveResponse";
    case MessageKind::CpRequest: return "CpRequest";
    case MessageKind::CpDelivery: return "CpDelivery";
    case MessageKind::PeerDelivery: return "PeerDelivery";
    }
    return "?";
}

namespace detail {

void validate_sim_input(const std::vector<UserAgent>& agents, const std::vector<RequestEvent>& requests)
{
    std::map<UserId, const UserAgent*> by_id;
    int sharers = 0;
    for (const auto& a : agents) {
        if (!by_id.emplace(a.id, &a).second) throw InvalidAgents("agent u" + std::to_string(a.id) + " declared twice");
        if (a.designated_sharer) {
            if (a.role == Role::Premium) throw InvalidAgents("premium agent u" + std::to_string(a.id) + " cannot share");
            ++sharers;
        }
    }
    if (sharers > 1) throw InvalidAgents("at most one designated sharer");

    std::set<UserId> seen;
    for (const auto& r : requests) {
        if (!by_id.contains(r.user)) throw UnknownAgent("request at tick " + std::to_string(r.time) +
                                                        " references unknown agent u" + std::to_string(r.user));
        if (r.time < 0) throw InvalidAgents("request ticks must be nonnegative");
        if (!seen.insert(r.user).second) throw DuplicateRequest("agent u" + std::to_string(r.user) + " requests twice");
    }
}

}  // namespace detail

}  // namespace hcd
