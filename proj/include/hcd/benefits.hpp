#pragma once

// Closed-form benefits of the CP and of the designated sharer for the three
// audience scenarios, before bargaining (raw, p_u explicit) and at the
// bargaining equilibrium (p_u eliminated), plus server load reduction.

#include <string>

#include "hcd/model.hpp"

namespace hcd {

template <Scalar S>
struct BenefitReport {
    Scenario scenario = Scenario::AllStandard;
    S cp{};
    /// Designated sharer's benefit. For AllPremium there is no sharer and this
    /// holds the common per-user benefit -f p_b instead.
    S sharer{};
    bool has_sharer = false;
    S load_reduction{};
};

namespace detail {

inline void require_bargaining_cohort(const Cohort& cohort, Scenario scenario)
{
    if (scenario != Scenario::AllPremium && cohort.x < 2) {
        throw DegenerateCohort("equilibrium benefit needs x >= 2 when standard users are present");
    }
}

}  // namespace detail

template <Scalar S>
S ben_cp_raw(const PriceSchedule<S>& p, const Cohort& cohort)
{
    const Scenario scenario = classify_scenario(cohort);
    const S f = from_count<S>(cohort.f);
    const S x = from_count<S>(cohort.x);
    const S y = from_count<S>(cohort.y);
    switch (scenario) {
    case Scenario::AllStandard:
        return f * (p.p_std * x - p.p_n - p.p_u * (x - 1));
    case Scenario::AllPremium:
        return f * (p.p_b - p.p_n) * x;
    case Scenario::Mixed:
        break;
    }
    return f * (p.p_b * y + p.p_std * (x - y) - p.p_n * (y + 1) - p.p_u * (x - y - 1));
}

template <Scalar S>
S ben_sharer_raw(const PriceSchedule<S>& p, const Cohort& cohort)
{
    const Scenario scenario = classify_scenario(cohort);
    const S f = from_count<S>(cohort.f);
    const S x = from_count<S>(cohort.x);
    const S y = from_count<S>(cohort.y);
    switch (scenario) {
    case Scenario::AllStandard:
        return f * (p.p_u * (x - 1) - p.p_std - p.s * (x - 1));
    case Scenario::AllPremium:
        return -f * p.p_b;
    case Scenario::Mixed:
        break;
    }
    return f * (p.p_u * (x - y - 1) - p.p_std - p.s * (x - y - 1));
}

/// CP benefit once CP and sharer settle at the midpoint of their objectives.
/// p_u does not appear. Throws DegenerateCohort for x < 2 with standard users.
template <Scalar S>
S ben_cp_eq(const PriceSchedule<S>& p, const Cohort& cohort)
{
    const Scenario scenario = classify_scenario(cohort);
    detail::require_bargaining_cohort(cohort, scenario);
    const S f = from_count<S>(cohort.f);
    const S x = from_count<S>(cohort.x);
    const S y = from_count<S>(cohort.y);
    switch (scenario) {
    case Scenario::AllStandard:
        return f * (p.p_std * (x - 1) / 2 - p.p_n);
    case Scenario::AllPremium:
        return f * (p.p_b - p.p_n) * x;
    case Scenario::Mixed:
        break;
    }
    return f * ((p.p_b * y + p.p_std * (x - y - 1)) / 2 - p.p_n * (y + 1));
}

template <Scalar S>
S ben_user_eq(const PriceSchedule<S>& p, const Cohort& cohort)
{
    const Scenario scenario = classify_scenario(cohort);
    detail::require_bargaining_cohort(cohort, scenario);
    const S f = from_count<S>(cohort.f);
    const S x = from_count<S>(cohort.x);
    const S y = from_count<S>(cohort.y);
    switch (scenario) {
    case Scenario::AllStandard:
        return f * (p.p_std * (x - 1) / 2 - p.s * (x - 1));
    case Scenario::AllPremium:
        return -f * p.p_b;
    case Scenario::Mixed:
        break;
    }
    return f * ((p.p_b * y + p.p_std * (x - y - 1)) / 2 - p.s * (x - y - 1));
}

/// ben_cp_eq, extended to the single standard user (x = 1, y = 0) whose
/// benefit is f (p_std - p_n).
template <Scalar S>
S ben_cp_eq_extended(const PriceSchedule<S>& p, const Cohort& cohort)
{
    if (classify_scenario(cohort) == Scenario::AllStandard && cohort.x == 1) {
        return from_count<S>(cohort.f) * (p.p_std - p.p_n);
    }
    return ben_cp_eq(p, cohort);
}

/// Fraction of the audience not served by the CP server: 1 - deliveries / x.
template <Scalar S>
S load_reduction(const Cohort& cohort)
{
    require_valid(cohort);
    return from_count<S>(cohort.shares()) / from_count<S>(cohort.x);
}

/// CP benefit at equilibrium in the normalized parameterization, with y = k x.
///
/// Works elementwise when k and x are Eigen arrays of matching size, so a
/// whole sweep column can be evaluated in one expression.
template <class T, Scalar S>
T ben_cp_eq_normalized(const S& n, const S& r, const T& k, const T& x, const S& p_n, const S& f)
{
    const S one(1);
    const S two(2);
    return T(f * p_n * (n * (r * k * x + x - k * x - one) / two - (k * x + one)));
}

template <Scalar S>
S ben_cp_eq_normalized(const NormalizedPrices<S>& np, const S& x, const S& p_n, const S& f)
{
    return ben_cp_eq_normalized<S, S>(np.n, np.r, np.k, x, p_n, f);
}

/// Equilibrium benefits where bargaining applies; raw forms otherwise
/// (single user, or no peer deliveries), which then do not depend on p_u.
template <Scalar S>
BenefitReport<S> benefit_report(const PriceSchedule<S>& p, const Cohort& cohort)
{
    BenefitReport<S> report;
    report.scenario = classify_scenario(cohort);
    report.has_sharer = report.scenario != Scenario::AllPremium;
    report.load_reduction = load_reduction<S>(cohort);
    if (report.scenario != Scenario::AllPremium && cohort.x < 2) {
        report.cp = ben_cp_raw(p.with_reward(S(0)), cohort);
        report.sharer = ben_sharer_raw(p.with_reward(S(0)), cohort);
    } else {
        report.cp = ben_cp_eq(p, cohort);
        report.sharer = ben_user_eq(p, cohort);
    }
    return report;
}

}  // namespace hcd
