#pragma once

// Random valid inputs for randomized equivalence checks. Rates are small
// rationals (quarters, tenths, twentieths) so exact-mode arithmetic never
// comes close to overflowing.

#include <random>

#include "hcd/model.hpp"

namespace hcd {

template <Scalar S>
S random_fraction(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, std::int64_t den)
{
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    const std::int64_t num = dist(rng);
    if constexpr (std::same_as<S, Rational>) {
        return Rational(num, den);
    } else {
        return double(num) / double(den);
    }
}

/// A schedule satisfying p_b > p_std > p_n > 0, p_u >= 0, s >= 0.
template <Scalar S>
PriceSchedule<S> random_schedule(std::mt19937_64& rng)
{
    PriceSchedule<S> p;
    p.p_n = random_fraction<S>(rng, 1, 8, 4);
    p.p_std = p.p_n + random_fraction<S>(rng, 1, 12, 4);
    p.p_b = p.p_std + random_fraction<S>(rng, 1, 12, 4);
    p.p_u = random_fraction<S>(rng, 0, 50, 10);
    p.s = random_fraction<S>(rng, 0, 10, 20);
    return p;
}

/// x uniform in [min_x, max_x]; y uniform in [0, x] except that the
/// all-standard and all-premium ends are each drawn a quarter of the time.
inline Cohort random_cohort(std::mt19937_64& rng, Count min_x, Count max_x, Count max_f = 4)
{
    Cohort c;
    c.x = std::uniform_int_distribution<Count>(min_x, max_x)(rng);
    const int shape = std::uniform_int_distribution<int>(0, 3)(rng);
    if (shape == 0) {
        c.y = 0;
    } else if (shape == 1) {
        c.y = c.x;
    } else {
        c.y = std::uniform_int_distribution<Count>(0, c.x)(rng);
    }
    c.f = std::uniform_int_distribution<Count>(1, max_f)(rng);
    return c;
}

}  // namespace hcd
