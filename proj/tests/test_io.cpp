#include <doctest.h>

#include <sstream>

#include "hcd/io.hpp"

using namespace hcd;
using Q = Rational;

namespace {

ScenarioText scenario(const std::string& text)
{
    std::istringstream in(text);
    return parse_scenario_text(in);
}

}  // namespace

TEST_CASE("key-value configs")
{
    std::istringstream in("# prices\np_n = 1\n\np_std=2\nx=10\n");
    const auto kv = parse_key_values(in);
    CHECK(kv.get("p_n") == "1");
    CHECK(kv.get("x") == "10");
    CHECK_FALSE(kv.get("p_b").has_value());

    PriceSchedule<Q> p;
    apply_rates(kv, p);
    CHECK(p.p_n == Q(1));
    CHECK(p.p_std == Q(2));

    std::istringstream dup("a=1\na=2\n");
    CHECK_THROWS_AS(parse_key_values(dup), ParseError);
    std::istringstream bad("a\n");
    CHECK_THROWS_AS(parse_key_values(bad), ParseError);

    std::istringstream junk("p_n=one\n");
    const auto kv2 = parse_key_values(junk);
    PriceSchedule<Q> q;
    CHECK_THROWS_AS(apply_rates(kv2, q), ParseError);
}

TEST_CASE("scenario files")
{
    const auto s = scenario("f=3\np_n=1\np_b=4\np_std=2\n"
                            "agent,9,standard,owns,sharer\n"
                            "1,u3,standard\n2,4,premium\n3,u3,standard\n");
    CHECK(s.f == 3);
    REQUIRE(s.agents.size() == 3);
    CHECK(s.agents[0].id == 9);
    CHECK(s.agents[0].owns_content);
    CHECK(s.agents[0].designated_sharer);
    CHECK(s.agents[2].role == Role::Premium);
    CHECK(s.requests.size() == 3);
    const auto p = scenario_schedule<Q>(s);
    CHECK(p.p_b == Q(4));
    CHECK(p.p_u == Q(0));
}

TEST_CASE("malformed scenario files")
{
    CHECK_THROWS_AS(scenario("p_n=1\n"), ParseError);
    CHECK_THROWS_AS(scenario(""), ParseError);
    CHECK_THROWS_AS(scenario("f=1\np_q=1\n"), ParseError);
    CHECK_THROWS_AS(scenario("f=1\n1,u1,standard\np_n=1\n"), ParseError);
    CHECK_THROWS_AS(scenario("f=1\n1,u1,gold\n"), ParseError);
    CHECK_THROWS_AS(scenario("f=1\n1,u1\n"), ParseError);
    CHECK_THROWS_AS(scenario("f=1\nx,u1,standard\n"), ParseError);
    CHECK_THROWS_AS(scenario("f=1\n1,u1,standard\n2,u1,premium\n"), ParseError);
    CHECK_THROWS_AS(scenario_schedule<Q>(scenario("f=1\np_n=1\n")), ParseError);
    try {
        scenario("f=1\np_n=1\n1,u1,standard\n2,u2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("ledger export")
{
    const auto s = scenario("f=1\np_n=1\np_b=4\np_std=2\np_u=4\n1,u1,standard\n2,u2,standard\n");
    const auto out = run(scenario_schedule<Q>(s), s.f, s.agents, s.requests);
    std::ostringstream csv;
    write_ledger_csv(csv, out);
    CHECK(csv.str() ==
          "time,payer,payee,amount,reason\n"
          "1,u1,CP,2,ContentPriceStandard\n"
          "1,CP,NP,1,NpDeliveryFee\n"
          "2,u2,CP,2,ContentPriceStandard\n"
          "2,CP,u1,4,ShareReward\n");
}
