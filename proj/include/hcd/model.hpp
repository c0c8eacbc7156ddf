#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hcd/errors.hpp"
#include "hcd/scalar.hpp"

namespace hcd {

using Count = std::int64_t;

/// Per-byte monetary rates for one content, in cost units per byte.
template <Scalar S>
struct PriceSchedule {
    S p_n{};    ///< fee the CP pays the network provider per delivered byte
    S p_b{};    ///< premium price
    S p_std{};  ///< standard price
    S p_u{};    ///< reward paid to the sharer per shared byte
    S s{};      ///< sharer's energy cost per shared byte

    PriceSchedule scaled(const S& factor) const
    {
        return {p_n * factor, p_b * factor, p_std * factor, p_u * factor, s * factor};
    }

    PriceSchedule with_reward(const S& reward) const
    {
        PriceSchedule copy = *this;
        copy.p_u = reward;
        return copy;
    }

    friend bool operator==(const PriceSchedule&, const PriceSchedule&) = default;
};

/// Audience of one content: x users in total, y of them premium, file of f bytes.
struct Cohort {
    Count x = 1;
    Count y = 0;
    Count f = 1;

    Count standard() const { return x - y; }
    /// Peer deliveries made by the designated sharer.
    Count shares() const { return x > y ? x - y - 1 : 0; }

    friend bool operator==(const Cohort&, const Cohort&) = default;
};

/// Throws InvalidCohort unless x >= 1, 0 <= y <= x and f >= 1.
void require_valid(const Cohort& cohort);

enum class Scenario { AllStandard, AllPremium, Mixed };

std::string_view to_string(Scenario scenario);

Scenario classify_scenario(const Cohort& cohort);

enum class Violation {
    NonFinite,                ///< some rate is NaN or infinite
    PremiumNotAboveStandard,  ///< p_b > p_std
    StandardNotAboveNetwork,  ///< p_std > p_n
    NetworkFeeNotPositive,    ///< p_n > 0
    NegativeReward,           ///< p_u >= 0
    NegativeEnergyCost,       ///< s >= 0
};

/// The constraint that was violated, e.g. "p_b > p_std".
std::string_view describe(Violation violation);

/// Every violated constraint, in declaration order of Violation. Empty means valid.
template <Scalar S>
std::vector<Violation> validate(const PriceSchedule<S>& schedule)
{
    std::vector<Violation> out;
    for (const S* rate : {&schedule.p_n, &schedule.p_b, &schedule.p_std, &schedule.p_u, &schedule.s}) {
        if (!is_finite(*rate)) {
            out.push_back(Violation::NonFinite);
            return out;
        }
    }
    if (!(schedule.p_b > schedule.p_std)) out.push_back(Violation::PremiumNotAboveStandard);
    if (!(schedule.p_std > schedule.p_n)) out.push_back(Violation::StandardNotAboveNetwork);
    if (!(schedule.p_n > S(0))) out.push_back(Violation::NetworkFeeNotPositive);
    if (schedule.p_u < S(0)) out.push_back(Violation::NegativeReward);
    if (schedule.s < S(0)) out.push_back(Violation::NegativeEnergyCost);
    return out;
}

class InvalidSchedule : public Error {
public:
    explicit InvalidSchedule(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

template <Scalar S>
void require_valid(const PriceSchedule<S>& schedule)
{
    if (auto v = validate(schedule); !v.empty()) throw InvalidSchedule(std::move(v));
}

/// Prices expressed in units of p_n: p_b = m p_n, p_std = n p_n, r = m / n, k = y / x.
template <Scalar S>
struct NormalizedPrices {
    S m{};
    S n{};
    S r{};
    S k{};

    /// Builds (m, n, r, k) from the standard price multiple n and the price ratio r.
    static NormalizedPrices from_ratio(const S& n, const S& r, const S& k) { return {r * n, n, r, k}; }

    friend bool operator==(const NormalizedPrices&, const NormalizedPrices&) = default;
};

template <Scalar S>
NormalizedPrices<S> normalize(const PriceSchedule<S>& schedule, const Cohort& cohort)
{
    require_valid(schedule);
    require_valid(cohort);
    S m = schedule.p_b / schedule.p_n;
    S n = schedule.p_std / schedule.p_n;
    return {m, n, m / n, from_count<S>(cohort.y) / from_count<S>(cohort.x)};
}

/// Inverse of normalize for the price fields; p_u and s are carried through.
template <Scalar S>
PriceSchedule<S> denormalize(const NormalizedPrices<S>& np, const S& p_n, const S& p_u = S(0), const S& s = S(0))
{
    return {p_n, np.m * p_n, np.n * p_n, p_u, s};
}

}  // namespace hcd
