#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "hcd/trace.hpp"

using namespace hcd;

namespace {

std::vector<SessionRecord> parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_trace(in);
}

std::string serialize(const std::vector<SessionRecord>& records)
{
    std::ostringstream out;
    write_trace(out, records);
    return out.str();
}

const std::string kHeader = "timestamp,user_id,content_id,bytes,option\n";

}  // namespace

TEST_CASE("timestamps")
{
    const auto ts = parse_timestamp("2014-07-01T18:30:00Z");
    CHECK(format_timestamp(ts) == "2014-07-01T18:30:00Z");
    CHECK_THROWS(parse_timestamp("2014-07-01 18:30:00"));
    CHECK_THROWS(parse_timestamp("2014-02-30T00:00:00Z"));
}

TEST_CASE("parse a small file")
{
    const auto records = parse(kHeader +
                               "2014-07-01T18:30:00Z,u1,c1,100,premium\n"
                               "2014-07-01T18:31:00Z,u2,c1,100,standard\n"
                               "2014-07-02T08:00:00Z,u3,c2,250,unassigned\n");
    REQUIRE(records.size() == 3);
    CHECK(records[2].bytes == 250);
    CHECK(records[2].option == PremiumOption::Unassigned);
}

TEST_CASE("parse errors carry position")
{
    try {
        parse(kHeader + "2014-07-01T18:30:00Z,u1,c1,100,premium\n2014-07-01T18:30:00Z,u1,c1,100\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 5);
    }
    try {
        parse(kHeader + "2014-07-01T18:30:00Z,u1,c1,0,premium\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 4);
    }
    CHECK_THROWS_AS(parse("time,user\n"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse(kHeader + "2014-07-01T18:30:00Z,u1,c1,10,gold\n"), ParseError);
}

TEST_CASE("round trip is byte-identical")
{
    const auto generated = generate_trace({7, 40, 12, 0.8, 0.3, 1000, 5});
    const std::string text = serialize(generated);
    CHECK(parse(text) == generated);
    CHECK(serialize(parse(text)) == text);
}

TEST_CASE("generator")
{
    TraceParams params{42, 100, 50, 0.8, 0.2, 1'000'000'000, 10};
    CHECK(generate_trace(params) == generate_trace(params));
    params.seed = 43;
    CHECK(generate_trace(params) != generate_trace(TraceParams{42, 100, 50, 0.8, 0.2, 1'000'000'000, 10}));

    params.premium_prob = 1.0;
    for (const auto& r : generate_trace(params)) CHECK(r.option == PremiumOption::Premium);

    // Premium is a per-user attribute.
    params.premium_prob = 0.5;
    std::map<std::string, PremiumOption> seen;
    for (const auto& r : generate_trace(params)) {
        auto [it, fresh] = seen.emplace(r.user_id, r.option);
        if (!fresh) CHECK(it->second == r.option);
    }

    CHECK_THROWS(generate_trace({1, 0, 5, 0.8, 0.0, 1, 1}));
    CHECK_THROWS(generate_trace({1, 5, 5, 0.8, 1.5, 1, 1}));
}

TEST_CASE("zero exponent gives near-uniform popularity")
{
    const Count contents = 20;
    const auto records = generate_trace({5, 2000, contents, 0.0, 0.0, 1, 10});
    std::map<std::string, double> counts;
    for (const auto& r : records) counts[r.content_id] += 1;
    REQUIRE(counts.size() == static_cast<std::size_t>(contents));
    const double expected = double(records.size()) / double(contents);
    double chi2 = 0;
    for (const auto& [id, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 19 degrees of freedom; 43.8 is the 0.001 upper quantile.
    CHECK(chi2 < 43.8);
}

TEST_CASE("cohort extraction")
{
    const auto records = parse(kHeader +
                               "2014-07-01T00:00:01Z,u1,c1,100,premium\n"
                               "2014-07-01T00:00:02Z,u2,c1,100,standard\n"
                               "2014-07-01T00:00:03Z,u1,c1,100,premium\n"
                               "2014-07-01T00:00:04Z,u3,c2,300,standard\n"
                               "2014-07-01T00:00:05Z,u4,c1,120,premium\n");
    const auto cohorts = extract_cohorts(records);
    REQUIRE(cohorts.size() == 2);
    CHECK(cohorts[0].content_id == "c1");
    CHECK(cohorts[0].viewers.size() == 3);
    CHECK(cohorts[0].premium_viewers == 2);
    CHECK(cohorts[0].f == 120);
    CHECK(cohorts[1].viewers.size() == 1);
    CHECK(cohorts[1].premium_viewers == 0);
    CHECK(user_pool(records).size() == 4);
}

TEST_CASE("premium sampling")
{
    const auto a = premium_sample(100, 30, 9, 4);
    const auto b = premium_sample(100, 60, 9, 4);
    CHECK(a.size() == 30);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
    CHECK(premium_sample(100, 30, 9, 5) != a);

    const int reps = 2000;
    std::vector<int> hits(100, 0);
    for (int r = 0; r < reps; ++r) {
        for (auto i : premium_sample(100, 50, 77, r)) ++hits[i];
    }
    const double sigma = std::sqrt(0.25 / reps);
    for (int h : hits) CHECK(std::abs(double(h) / reps - 0.5) < 3 * sigma);
}

TEST_CASE("curve on a single shared content")
{
    std::vector<std::string> pool;
    ContentCohort content{"c1", {}, 0, 1};
    for (int i = 0; i < 100; ++i) {
        pool.push_back("u" + std::to_string(i));
        content.viewers.push_back(pool.back());
    }
    const std::vector<ContentCohort> cohorts{content};

    CurveParams params{2.0, 2.0, {0.0, 0.5, 0.99, 1.0}, 20, 3};
    auto curve = mc_benefit_curve(pool, cohorts, params);
    CHECK(curve[0].mean_benefit == 98.0);
    CHECK(curve[1].mean_benefit == 98.0);
    CHECK(curve[3].mean_benefit == 300.0);
    for (const auto& p : curve) CHECK(p.ci_low == p.ci_high);

    params.r = 1.5;
    curve = mc_benefit_curve(pool, cohorts, params);
    CHECK(curve[0].mean_benefit == 98.0);
    CHECK(curve[1].mean_benefit < curve[0].mean_benefit);
    // (m - 1) x - m (x - 1) / 2 + x with m = 3, x = 100
    CHECK(curve[3].mean_benefit - curve[2].mean_benefit == doctest::Approx(151.5));

    CHECK_THROWS_AS(mc_benefit_curve({}, cohorts, params), EmptyPool);
    params.grid = {1.5};
    CHECK_THROWS(mc_benefit_curve(pool, cohorts, params));
}

TEST_CASE("curve CI brackets the mean")
{
    const auto records = generate_trace({11, 100, 30, 0.8, 0.0, 1, 10});
    const auto pool = user_pool(records);
    const auto cohorts = extract_cohorts(records);
    CurveParams params{2.0, 1.5, {0.0, 0.3, 0.6, 1.0}, 50, 8};
    const auto a = mc_benefit_curve(pool, cohorts, params);
    CHECK(a == mc_benefit_curve(pool, cohorts, params));
    for (const auto& p : a) {
        CHECK(p.ci_low <= p.mean_benefit);
        CHECK(p.mean_benefit <= p.ci_high);
        CHECK(p.replicates == 50);
    }
    CHECK(a[0].ci_low == a[0].ci_high);
    CHECK(a[3].ci_low == a[3].ci_high);
    CHECK(a[1].ci_high > a[1].ci_low);
}
