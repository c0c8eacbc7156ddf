#include <doctest.h>

#include <algorithm>
#include <random>

#include "hcd/model.hpp"
#include "hcd/sampling.hpp"

using namespace hcd;
using Q = Rational;

namespace {

PriceSchedule<Q> schedule(Q p_n, Q p_b, Q p_std, Q p_u = 0, Q s = 0) { return {p_n, p_b, p_std, p_u, s}; }

bool has(const std::vector<Violation>& v, Violation x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("validate")
{
    CHECK(validate(schedule(1, 4, 2, 1, Q(1, 10))).empty());

    auto v = validate(schedule(1, 2, 2));
    CHECK(v.size() == 1);
    CHECK(has(v, Violation::PremiumNotAboveStandard));

    v = validate(schedule(1, 4, 1));
    CHECK(v.size() == 1);
    CHECK(has(v, Violation::StandardNotAboveNetwork));
    CHECK(describe(v.front()) == "p_std > p_n");

    v = validate(schedule(0, 0, 0, -1, -1));
    CHECK(has(v, Violation::NetworkFeeNotPositive));
    CHECK(has(v, Violation::NegativeReward));
    CHECK(has(v, Violation::NegativeEnergyCost));

    CHECK_THROWS_AS(require_valid(schedule(1, 2, 2)), InvalidSchedule);
    CHECK(validate(PriceSchedule<double>{1, std::nan(""), 2, 0, 0}).size() >= 1);
}

TEST_CASE("cohort validity")
{
    CHECK_NOTHROW(require_valid(Cohort{1, 0, 1}));
    CHECK_THROWS_AS(require_valid(Cohort{0, 0, 1}), InvalidCohort);
    CHECK_THROWS_AS(require_valid(Cohort{3, 4, 1}), InvalidCohort);
    CHECK_THROWS_AS(require_valid(Cohort{3, -1, 1}), InvalidCohort);
    CHECK_THROWS_AS(require_valid(Cohort{3, 1, 0}), InvalidCohort);
}

TEST_CASE("classify partitions 0..x")
{
    CHECK(classify_scenario({10, 0, 1}) == Scenario::AllStandard);
    CHECK(classify_scenario({10, 10, 1}) == Scenario::AllPremium);
    CHECK(classify_scenario({10, 5, 1}) == Scenario::Mixed);
    for (Count x = 1; x <= 12; ++x) {
        int standard = 0, premium = 0, mixed = 0;
        for (Count y = 0; y <= x; ++y) {
            switch (classify_scenario({x, y, 1})) {
            case Scenario::AllStandard: ++standard; break;
            case Scenario::AllPremium: ++premium; break;
            case Scenario::Mixed: ++mixed; break;
            }
        }
        CHECK(standard == 1);
        CHECK(premium == 1);
        CHECK(mixed == x - 1);
    }
}

TEST_CASE("normalize")
{
    auto np = normalize(schedule(1, 4, 2), Cohort{10, 5, 1});
    CHECK(np.m == Q(4));
    CHECK(np.n == Q(2));
    CHECK(np.r == Q(2));
    CHECK(np.k == Q(1, 2));

    np = normalize(schedule(2, 8, 4), Cohort{10, 0, 1});
    CHECK(np.m == Q(4));
    CHECK(np.r == Q(2));
    CHECK(np.k == Q(0));

    np = normalize(schedule(1, 3, 2), Cohort{4, 1, 1});
    CHECK(np.m == Q(3));
    CHECK(np.r == Q(3, 2));
    CHECK(np.k == Q(1, 4));
}

TEST_CASE("normalize round trip")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_schedule<Q>(rng);
        const Cohort c = random_cohort(rng, 1, 30);
        const auto back = denormalize(normalize(p, c), p.p_n);
        CHECK(back.p_b == p.p_b);
        CHECK(back.p_std == p.p_std);

        const auto pd = random_schedule<double>(rng);
        const auto backd = denormalize(normalize(pd, c), pd.p_n);
        CHECK(same_value(backd.p_b, pd.p_b, 1e-12));
        CHECK(same_value(backd.p_std, pd.p_std, 1e-12));
    }
}
