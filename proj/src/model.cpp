#include "hcd/model.hpp"

namespace hcd {

void require_valid(const Cohort& cohort)
{
    if (cohort.x < 1) throw InvalidCohort("cohort needs x >= 1, got x = " + std::to_string(cohort.x));
    if (cohort.y < 0 || cohort.y > cohort.x) {
        throw InvalidCohort("cohort needs 0 <= y <= x, got y = " + std::to_string(cohort.y) +
                            ", x = " + std::to_string(cohort.x));
    }
    if (cohort.f < 1) throw InvalidCohort("cohort needs f >= 1, got f = " + std::to_string(cohort.f));
}

std::string_view to_string(Scenario scenario)
{
    switch (scenario) {
    case Scenario::AllStandard: return "AllStandard";
    case Scenario::AllPremium: return "AllPremium";
    case Scenario::Mixed: return "Mixed";
    }
    return "?";
}

Scenario classify_scenario(const Cohort& cohort)
{
    require_valid(cohort);
    if (cohort.y == 0) return Scenario::AllStandard;
    if (cohort.y == cohort.x) return Scenario::AllPremium;
    return Scenario::Mixed;
}

std::string_view describe(Violation violation)
{
    switch (violation) {
    case Violation::NonFinite: return "all rates finite";
    case Violation::PremiumNotAboveStandard: return "p_b > p_std";
    case Violation::StandardNotAboveNetwork: return "p_std > p_n";
    case Violation::NetworkFeeNotPositive: return "p_n > 0";
    case Violation::NegativeReward: return "p_u >= 0";
    case Violation::NegativeEnergyCost: return "s >= 0";
    }
    return "?";
}

namespace {

std::string join(const std::vector<Violation>& violations)
{
    std::string out = "price schedule violates";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        out += i == 0 ? " " : ", ";
        out += describe(violations[i]);
    }
    return out;
}

}  // namespace

InvalidSchedule::InvalidSchedule(std::vector<Violation> violations)
    : Error(join(violations)), violations_(std::move(violations))
{
}

}  // namespace hcd
