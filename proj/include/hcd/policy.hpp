#pragma once

// Pricing when the CP also values server load reduction:
// TF = a * Ben_CP + b * phi * LR with a + b = 1.

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hcd/benefits.hpp"

namespace hcd {

template <Scalar S>
struct PolicyWeights {
    S a{};    ///< weight on benefit
    S b{};    ///< weight on load reduction
    S phi{};  ///< benefit-equivalent value of a full load reduction, c.u.
};

/// Throws InvalidWeights unless a, b in [0, 1], a + b = 1 and phi > 0.
template <Scalar S>
void require_valid(const PolicyWeights<S>& w)
{
    if (w.a < S(0) || w.a > S(1) || w.b < S(0) || w.b > S(1)) throw InvalidWeights("weights must lie in [0, 1]");
    if (!same_value(w.a + w.b, S(1))) throw InvalidWeights("weights must satisfy a + b = 1");
    if (!(w.phi > S(0))) throw InvalidWeights("phi must be positive");
}

enum class PolicyMode { Asymptotic, Exact };

std::string_view to_string(PolicyMode mode);

template <Scalar S>
struct PolicyPrices {
    S p_b{};
    S p_std{};
    PolicyMode mode = PolicyMode::Asymptotic;
    bool feasible = false;  ///< p_b > p_std > p_n
    std::optional<S> gap;
    /// Exact mode: max over y in [1, x-1] of |TF(Mixed, y) - TF(AllPremium)|.
    std::optional<S> residual;
    /// Exact mode: max - min of TF(Mixed, y) over y in [1, x-1].
    std::optional<S> mixed_spread;
};

template <Scalar S>
S target_function(const PolicyWeights<S>& w, const PriceSchedule<S>& p, const Cohort& cohort)
{
    return w.a * ben_cp_eq(p, cohort) + w.b * w.phi * load_reduction<S>(cohort);
}

/// p_b - p_std that makes TF of the mixed scenario independent of y.
template <Scalar S>
S price_gap(const PolicyWeights<S>& w, const S& p_n, Count f, Count x)
{
    if (w.a == S(0)) throw ZeroBenefitWeight();
    if (x < 1) throw DegenerateCohort("price gap needs x >= 1");
    return 2 * p_n + 2 * w.b * w.phi / (w.a * from_count<S>(f) * from_count<S>(x));
}

/// Limit of price_gap as the audience grows without bound.
template <Scalar S>
S price_gap_limit(const S& p_n)
{
    return 2 * p_n;
}

/// Large-audience prices: p_b = 2 b phi / (a f), p_std = p_b - 2 p_n.
template <Scalar S>
PolicyPrices<S> asymptotic_policy(const PolicyWeights<S>& w, const S& p_n, Count f)
{
    if (w.a == S(0)) throw ZeroBenefitWeight();
    PolicyPrices<S> out;
    out.mode = PolicyMode::Asymptotic;
    out.p_b = 2 * w.b * w.phi / (w.a * from_count<S>(f));
    out.p_std = out.p_b - 2 * p_n;
    out.gap = price_gap_limit(p_n);
    out.feasible = out.p_b > out.p_std && out.p_std > p_n;
    return out;
}

/// phi for which the asymptotic prices have ratio p_b / p_std = r.
template <Scalar S>
S calibrate_phi(const S& r, const S& a, const S& b, const S& p_n, Count f)
{
    if (!(r > S(1))) throw InvalidRatio("calibration needs r > 1");
    if (a == S(0)) throw ZeroBenefitWeight();
    if (!(b > S(0))) throw InvalidWeights("calibration needs b > 0");
    return p_n * a * from_count<S>(f) / (b * (1 - 1 / r));
}

template <Scalar S>
struct MnRelation {
    S n{};
    S m{};
    bool n_above_one = false;  ///< whether the standing constraint n > 1 holds
};

/// Multiples n, m of p_n on the large-audience policy line m = n + 2 with r = 1 + delta.
template <Scalar S>
MnRelation<S> mn_relation(const S& delta)
{
    if (!(delta > S(0))) throw InvalidRatio("mn_relation needs delta = r - 1 > 0");
    MnRelation<S> out;
    out.n = 2 / delta;
    out.m = out.n + 2;
    out.n_above_one = out.n > S(1);
    return out;
}

/// Finite-audience prices: solves TF(AllPremium) = TF(AllStandard) together
/// with p_b - p_std = price_gap exactly, then reports how far TF(Mixed, y)
/// strays from TF(AllPremium) over y in [1, x - 1].
template <Scalar S>
PolicyPrices<S> exact_indifference(const PolicyWeights<S>& w, const S& p_n, Count f_bytes, Count x_count)
{
    if (w.a == S(0)) throw ZeroBenefitWeight();
    if (x_count < 2) throw DegenerateCohort("exact indifference needs x >= 2");

    const S f = from_count<S>(f_bytes);
    const S x = from_count<S>(x_count);
    const S gap = price_gap(w, p_n, f_bytes, x_count);

    // Unknowns (p_b, p_std).
    //   a f x p_b - a f (x - 1)/2 p_std = a f p_n (x - 1) + b phi (x - 1)/x
    //   p_b - p_std = gap
    Eigen::Matrix<S, 2, 2> lhs;
    lhs << w.a * f * x, -w.a * f * (x - 1) / 2,
           S(1), S(-1);
    Eigen::Matrix<S, 2, 1> rhs;
    rhs << w.a * f * p_n * (x - 1) + w.b * w.phi * (x - 1) / x,
           gap;
    const Eigen::Matrix<S, 2, 1> sol = lhs.fullPivLu().solve(rhs);

    PolicyPrices<S> out;
    out.mode = PolicyMode::Exact;
    out.p_b = sol(0);
    out.p_std = sol(1);
    out.gap = gap;
    out.feasible = out.p_b > out.p_std && out.p_std > p_n;

    const PriceSchedule<S> schedule{p_n, out.p_b, out.p_std, S(0), S(0)};
    const S tf_premium = target_function(w, schedule, Cohort{x_count, x_count, f_bytes});
    S residual(0);
    S lo = target_function(w, schedule, Cohort{x_count, 1, f_bytes});
    S hi = lo;
    for (Count y = 1; y < x_count; ++y) {
        const S tf = target_function(w, schedule, Cohort{x_count, y, f_bytes});
        residual = std::max(residual, tf > tf_premium ? tf - tf_premium : tf_premium - tf);
        lo = std::min(lo, tf);
        hi = std::max(hi, tf);
    }
    out.residual = residual;
    out.mixed_spread = hi - lo;
    return out;
}

template <Scalar S>
struct RankedScenario {
    Cohort cohort;
    Scenario scenario = Scenario::AllStandard;
    S tf{};
};

/// The all-standard, mixed (when the cohort is mixed) and all-premium
/// variants of a cohort's audience size.
std::vector<Cohort> scenario_candidates(const Cohort& cohort);

/// Candidates ordered by target function, best first; ties keep input order.
template <Scalar S>
std::vector<RankedScenario<S>> recommend(const PolicyWeights<S>& w, std::span<const Cohort> candidates,
                                         const PriceSchedule<S>& p)
{
    std::vector<RankedScenario<S>> ranked;
    ranked.reserve(candidates.size());
    for (const Cohort& c : candidates) ranked.push_back({c, classify_scenario(c), target_function(w, p, c)});
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& l, const auto& r) { return l.tf > r.tf; });
    return ranked;
}

}  // namespace hcd
