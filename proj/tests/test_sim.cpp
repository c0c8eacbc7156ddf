#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "hcd/io.hpp"
#include "hcd/sampling.hpp"
#include "hcd/sim.hpp"

using namespace hcd;
using Q = Rational;

namespace {

const PriceSchedule<Q> kSchedule{1, 4, 2, 4, Q(1, 10)};

std::vector<UserAgent> four_users()
{
    return {{1, Role::Standard}, {2, Role::Standard}, {3, Role::Standard}, {4, Role::Premium}};
}

std::vector<RequestEvent> timeline() { return {{1, 3}, {5, 2}, {5, 4}, {7, 1}}; }

}  // namespace

TEST_CASE("four-user timeline")
{
    const auto out = run(kSchedule, 1, four_users(), timeline());
    const auto& p = kSchedule;

    // Three downloads in: u3 from the server, u4 premium, u2 from u3.
    const auto early = out.nets_through(5);
    CHECK(early.at(Party::cp()) == p.p_b + 2 * p.p_std - 2 * p.p_n - p.p_u);

    CHECK(out.net_of(Party::cp()) == Q(0));
    CHECK(out.net_of(Party::of(3)) == 2 * p.p_u - p.p_std - 2 * p.s);
    CHECK(out.net_of(Party::of(3)) == Q(58, 10));
    CHECK(out.net_of(Party::of(2)) == -p.p_std);
    CHECK(out.net_of(Party::of(4)) == -p.p_b);
    CHECK(out.net_of(Party::np()) == 2 * p.p_n);
    CHECK(out.net_of(Party::energy_sink()) == 2 * p.s);
    CHECK(out.designated_sharer == UserId{3});
    CHECK(out.server_deliveries == 2);
    CHECK(out.shares == 2);

    CHECK(out.net_of(Party::cp()) == ben_cp_raw(p, Cohort{4, 1, 1}));
    CHECK(out.net_of(Party::of(3)) == ben_sharer_raw(p, Cohort{4, 1, 1}));

    // u3 asks both other standard users first; both say no.
    REQUIRE(out.messages.size() >= 6);
    CHECK(out.messages[0].kind == MessageKind::AvailabilityQuery);
    CHECK(out.messages[0].to == Party::of(1));
    CHECK(out.messages[1].to == Party::of(2));
    CHECK(out.messages[2].kind == MessageKind::NegativeResponse);
    CHECK(out.messages[3].kind == MessageKind::NegativeResponse);
    CHECK(out.messages[4].kind == MessageKind::CpRequest);
    CHECK(out.messages[5].kind == MessageKind::CpDelivery);

    // At tick 5, u2 sees u3's copy from tick 1.
    const bool u2_positive = std::any_of(out.messages.begin(), out.messages.end(), [](const Message& m) {
        return m.time == 5 && m.kind == MessageKind::PositiveResponse && m.from == Party::of(3) && m.to == Party::of(2);
    });
    CHECK(u2_positive);
}

TEST_CASE("timeline file")
{
    std::ifstream file(HCD_TEST_DATA "/timeline.txt");
    REQUIRE(file);
    const auto text = parse_scenario_text(file);
    const auto out = run(scenario_schedule<Q>(text), text.f, text.agents, text.requests);
    const auto direct = run(kSchedule, 1, four_users(), timeline());
    CHECK(out.ledger == direct.ledger);
    CHECK(out.messages == direct.messages);
    CHECK(out.net == direct.net);
}

TEST_CASE("single standard user")
{
    const auto out = run(kSchedule, 3, {{7, Role::Standard}}, {{0, 7}});
    CHECK(out.net_of(Party::cp()) == Q(3) * (kSchedule.p_std - kSchedule.p_n));
}

TEST_CASE("same-tick arrivals do not see each other")
{
    const auto out = run(kSchedule, 1, {{1, Role::Standard}, {2, Role::Standard}}, {{3, 2}, {3, 1}});
    CHECK(out.server_deliveries == 2);
    CHECK(out.shares == 0);
    CHECK(out.designated_sharer == UserId{1});
}

TEST_CASE("oracle check examples")
{
    auto rep = oracle_check(kSchedule, {10, 5, 1}, 1);
    CHECK(rep.ok());
    CHECK(rep.outcome.net_of(Party::cp()) == Q(8));

    for (std::uint64_t seed : {1u, 2u, 3u}) {
        rep = oracle_check(kSchedule, {10, 10, 1}, seed);
        CHECK(rep.ok());
        CHECK(rep.outcome.net_of(Party::cp()) == Q(30));
        CHECK(rep.outcome.server_deliveries == 10);
    }

    rep = oracle_check(kSchedule, {2, 1, 1}, 5);
    CHECK(rep.ok());
    CHECK(rep.outcome.shares == 0);
}

TEST_CASE("randomized ledger properties")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        const auto p = random_schedule<Q>(rng);
        const Cohort c = random_cohort(rng, 1, 30);
        const auto rep = oracle_check(p, c, rng());
        for (const auto& m : rep.mismatches) FAIL_CHECK(m);

        Q total(0);
        for (const auto& [party, value] : rep.outcome.net) total += value;
        CHECK(total == Q(0));

        for (const auto& e : rep.outcome.ledger) {
            CHECK(e.amount > Q(0));
            CHECK(e.payer != e.payee);
        }
        for (const auto& m : rep.outcome.messages) {
            if (m.kind == MessageKind::PeerDelivery) CHECK(m.from == Party::of(*rep.outcome.designated_sharer));
        }
        const Count expected = c.y == c.x ? c.x : c.y + 1;
        CHECK(rep.outcome.server_deliveries == expected);
        CHECK(rep.outcome.server_deliveries + rep.outcome.shares == c.x);
        CHECK(replay(rep.outcome) == rep.outcome);

        // Nets depend on counts only, not on arrival order.
        const auto other = oracle_check(p, c, rng());
        CHECK(other.outcome.net_of(Party::cp()) == rep.outcome.net_of(Party::cp()));
        CHECK(other.outcome.net_of(Party::np()) == rep.outcome.net_of(Party::np()));
    }
}

TEST_CASE("same-tick ties break by id")
{
    std::vector<RequestEvent> a{{1, 3}, {5, 2}, {5, 4}, {7, 1}};
    std::vector<RequestEvent> b{{5, 4}, {1, 3}, {7, 1}, {5, 2}};
    const auto ra = run(kSchedule, 1, four_users(), a);
    const auto rb = run(kSchedule, 1, four_users(), b);
    CHECK(ra.ledger == rb.ledger);
    CHECK(ra.messages == rb.messages);
    CHECK(ra.net == rb.net);
}

TEST_CASE("input errors")
{
    CHECK_THROWS_AS(run(kSchedule, 1, four_users(), {{1, 9}}), UnknownAgent);
    CHECK_THROWS_AS(run(kSchedule, 1, four_users(), {{1, 1}, {2, 1}}), DuplicateRequest);
    CHECK_THROWS_AS(run(kSchedule, 1, {{1, Role::Premium, false, true}}, {}), InvalidAgents);
    CHECK_THROWS_AS(run(kSchedule, 1, {{1, Role::Standard, true, true}, {2, Role::Standard, true, true}}, {}),
                    InvalidAgents);
}

TEST_CASE("preloaded sharer serves immediately")
{
    const auto out = run(kSchedule, 1, {{1, Role::Standard, true, true}, {2, Role::Standard}}, {{1, 2}});
    CHECK(out.shares == 1);
    CHECK(out.server_deliveries == 0);
    CHECK(out.net_of(Party::of(1)) == kSchedule.p_u - kSchedule.s);
}
