#include "hcd/bargaining.hpp"
#include "hcd/policy.hpp"

namespace hcd {

std::string_view to_string(NbsStatus status)
{
    switch (status) {
    case NbsStatus::Settled: return "Settled";
    case NbsStatus::NoEquilibrium: return "NoEquilibrium";
    case NbsStatus::NoBargain: return "NoBargain";
    }
    return "?";
}

std::string_view to_string(PolicyMode mode)
{
    return mode == PolicyMode::Exact ? "exact" : "asymptotic";
}

std::vector<Cohort> scenario_candidates(const Cohort& cohort)
{
    require_valid(cohort);
    std::vector<Cohort> out{Cohort{cohort.x, 0, cohort.f}};
    if (classify_scenario(cohort) == Scenario::Mixed) out.push_back(cohort);
    if (cohort.x > 0) out.push_back(Cohort{cohort.x, cohort.x, cohort.f});
    return out;
}

}  // namespace hcd
