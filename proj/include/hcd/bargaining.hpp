#pragma once

// Nash bargaining between the CP and the designated sharer over the sharing
// reward p_u, and comparisons of the CP's equilibrium benefit across
// scenarios in the normalized (m, n) parameterization.

#include <optional>

#include "hcd/benefits.hpp"

namespace hcd {

/// Per-byte objectives of CP and sharer; the reward cancels in their sum.
template <Scalar S>
struct BargainState {
    S f_cp{};
    S f_user{};
    S f_eq{};
};

enum class NbsStatus {
    Settled,        ///< reward found, f_cp = f_user = f_eq
    NoEquilibrium,  ///< all premium: the only settlement is p_b = 0
    NoBargain,      ///< nobody shares, nothing to bargain over
};

std::string_view to_string(NbsStatus status);

template <Scalar S>
struct NbsResult {
    NbsStatus status = NbsStatus::NoBargain;
    std::optional<S> reward;
    std::optional<BargainState<S>> state;

    bool settled() const { return status == NbsStatus::Settled; }
};

namespace detail {

inline void require_sharing(const Cohort& cohort)
{
    const Scenario scenario = classify_scenario(cohort);
    if (scenario == Scenario::AllPremium) throw NoBargain("all-premium cohort has no sharer");
    if (cohort.x < 2) throw NoBargain("a single user cannot share");
    if (cohort.shares() == 0) throw NoBargain("exactly one standard user: no peer deliveries");
}

}  // namespace detail

template <Scalar S>
BargainState<S> bargain_state(const PriceSchedule<S>& p, const Cohort& cohort)
{
    detail::require_sharing(cohort);
    const S x = from_count<S>(cohort.x);
    const S y = from_count<S>(cohort.y);
    const S shares = from_count<S>(cohort.shares());
    BargainState<S> st;
    // y = 0 reduces to the all-standard objectives.
    st.f_cp = p.p_b * y + p.p_std * (x - y) - p.p_u * shares;
    st.f_user = p.p_u * shares - p.p_std;
    st.f_eq = (st.f_cp + st.f_user) / 2;
    return st;
}

/// Sharing reward at which both parties' objectives meet at the midpoint.
/// p_u in the input is ignored.
template <Scalar S>
NbsResult<S> nbs_reward(const PriceSchedule<S>& p, const Cohort& cohort)
{
    NbsResult<S> result;
    const Scenario scenario = classify_scenario(cohort);
    if (scenario == Scenario::AllPremium) {
        result.status = NbsStatus::NoEquilibrium;
        return result;
    }
    if (cohort.x < 2 || cohort.shares() == 0) {
        result.status = NbsStatus::NoBargain;
        return result;
    }
    const S x = from_count<S>(cohort.x);
    const S y = from_count<S>(cohort.y);
    // Solves p_u (x - y - 1) - p_std = (p_b y + p_std (x - y - 1)) / 2.
    S reward = (p.p_b * y + p.p_std * (x - y + 1)) / (2 * (x - y - 1));
    result.status = NbsStatus::Settled;
    result.reward = reward;
    result.state = bargain_state(p.with_reward(reward), cohort);
    return result;
}

/// True iff the raw benefits at the schedule's p_u equal the equilibrium forms.
template <Scalar S>
bool verify_equilibrium(const PriceSchedule<S>& p, const Cohort& cohort)
{
    detail::require_sharing(cohort);
    return same_value(ben_cp_raw(p, cohort), ben_cp_eq(p, cohort)) &&
           same_value(ben_sharer_raw(p, cohort), ben_user_eq(p, cohort));
}

template <Scalar S>
struct ComparisonReport {
    S ben_standard{};  ///< AllStandard equilibrium benefit
    S ben_premium{};   ///< AllPremium benefit
    std::optional<S> ben_mixed;
    S delta_21{};  ///< premium minus all-standard
    std::optional<S> delta_23;  ///< premium minus mixed, when 1 <= y < x
    Scenario dominant = Scenario::AllPremium;
    bool two_m_gt_n_plus_2 = false;  ///< exact dominance condition
    bool m_gt_1_5 = false;           ///< weaker published claim
};

/// delta_21 from its closed-form expansion f p_n ((2m - n - 2) x + n + 2) / 2.
template <Scalar S>
S delta_21_expanded(const S& m, const S& n, const S& x, const S& p_n, const S& f)
{
    return f * p_n * ((m - n) * x + (m - 2) * x + n + 2) / 2;
}

/// delta_23 re-derived by direct expansion:
/// f p_n ((2m - n - 2) x + (n + 2 - m) y + n + 2) / 2.
template <Scalar S>
S delta_23_expanded(const S& m, const S& n, const S& x, const S& y, const S& p_n, const S& f)
{
    return f * p_n * ((2 * m - n - 2) * x + (n + 2 - m) * y + n + 2) / 2;
}

/// The printed form with (n + 2) y; differs from delta_23_expanded by f p_n m y / 2.
template <Scalar S>
S delta_23_printed(const S& m, const S& n, const S& x, const S& y, const S& p_n, const S& f)
{
    return f * p_n * ((2 * m - n - 2) * x + (n + 2) * y + n + 2) / 2;
}

/// Compares equilibrium CP benefits. The Mixed term is included for 1 <= y < x.
template <Scalar S>
ComparisonReport<S> compare_cp(const S& m, const S& n, Count x, Count y, const S& p_n, const S& f_bytes)
{
    if (!(m > n) || !(n > S(1))) throw DegenerateCohort("comparison needs m > n > 1");
    if (x < 2) throw DegenerateCohort("comparison needs x >= 2");
    if (y < 0 || y >= x) throw DegenerateCohort("comparison needs 0 <= y < x");
    if (!(f_bytes > S(0)) || !(p_n > S(0))) throw DegenerateCohort("comparison needs f > 0 and p_n > 0");

    // f enters linearly, so a unit-size cohort scaled by f is exact.
    const PriceSchedule<S> p{p_n, m * p_n, n * p_n, S(0), S(0)};
    ComparisonReport<S> rep;
    rep.ben_standard = f_bytes * ben_cp_eq(p, Cohort{x, 0, 1});
    rep.ben_premium = f_bytes * ben_cp_eq(p, Cohort{x, x, 1});
    rep.delta_21 = rep.ben_premium - rep.ben_standard;
    if (y >= 1) {
        rep.ben_mixed = f_bytes * ben_cp_eq(p, Cohort{x, y, 1});
        rep.delta_23 = rep.ben_premium - *rep.ben_mixed;
    }
    rep.two_m_gt_n_plus_2 = 2 * m > n + 2;
    rep.m_gt_1_5 = 2 * m > S(3);

    rep.dominant = Scenario::AllPremium;
    S best = rep.ben_premium;
    if (rep.ben_standard > best) {
        best = rep.ben_standard;
        rep.dominant = Scenario::AllStandard;
    }
    if (rep.ben_mixed && *rep.ben_mixed > best) rep.dominant = Scenario::Mixed;
    return rep;
}

template <Scalar S>
struct Gradient {
    S d_premium{};   ///< dF_eq3 / dp_b
    S d_standard{};  ///< dF_eq3 / dp_std
};

/// The equilibrium objective of the mixed scenario, f (p_b y + p_std (x - y - 1)) / 2.
template <Scalar S>
S mixed_equilibrium_objective(const S& p_b, const S& p_std, const Cohort& cohort)
{
    const S f = from_count<S>(cohort.f);
    const S x = from_count<S>(cohort.x);
    const S y = from_count<S>(cohort.y);
    return f * (p_b * y + p_std * (x - y - 1)) / 2;
}

/// Gradient of the mixed equilibrium objective. Both components are
/// positive whenever someone shares, so no interior maximum exists.
template <Scalar S>
Gradient<S> interior_max_witness(const Cohort& cohort)
{
    if (classify_scenario(cohort) != Scenario::Mixed) throw DegenerateCohort("gradient needs 1 <= y <= x - 1");
    const S f = from_count<S>(cohort.f);
    return {f * from_count<S>(cohort.y) / 2, f * from_count<S>(cohort.shares()) / 2};
}

}  // namespace hcd
