#include "hcd/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <tuple>

#include <Eigen/Core>

#include "hcd/benefits.hpp"

namespace hcd {

using namespace std::chrono;

std::string_view to_string(PremiumOption option)
{
    switch (option) {
    case PremiumOption::Premium: return "premium";
    case PremiumOption::Standard: return "standard";
    case PremiumOption::Unassigned: return "unassigned";
    }
    return "?";
}

namespace {

int two_digits(int v, char* out)
{
    out[0] = char('0' + v / 10);
    out[1] = char('0' + v % 10);
    return 2;
}

bool read_int(std::string_view text, int& out)
{
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

PremiumOption parse_option(std::string_view text)
{
    if (text == "premium") return PremiumOption::Premium;
    if (text == "standard") return PremiumOption::Standard;
    if (text == "unassigned") return PremiumOption::Unassigned;
    throw std::invalid_argument("option must be premium, standard or unassigned");
}

std::mt19937_64 replicate_rng(std::uint64_t seed, Count replicate)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(std::uint64_t(replicate) >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

std::string format_timestamp(Timestamp ts)
{
    const sys_days day = floor<days>(ts);
    const year_month_day ymd{day};
    const hh_mm_ss<seconds> hms{ts - day};
    std::string out = std::to_string(int(ymd.year()));
    char buf[2];
    auto add = [&](char sep, int v) {
        out += sep;
        two_digits(v, buf);
        out.append(buf, 2);
    };
    add('-', int(unsigned(ymd.month())));
    add('-', int(unsigned(ymd.day())));
    add('T', int(hms.hours().count()));
    add(':', int(hms.minutes().count()));
    add(':', int(hms.seconds().count()));
    out += 'Z';
    return out;
}

Timestamp parse_timestamp(std::string_view text)
{
    // YYYY-MM-DDTHH:MM:SSZ
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
        text[16] != ':' || text[19] != 'Z') {
        throw std::invalid_argument("timestamp must look like 2014-07-01T18:30:00Z");
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!read_int(text.substr(0, 4), y) || !read_int(text.substr(5, 2), mo) || !read_int(text.substr(8, 2), d) ||
        !read_int(text.substr(11, 2), h) || !read_int(text.substr(14, 2), mi) || !read_int(text.substr(17, 2), s)) {
        throw std::invalid_argument("timestamp fields must be digits");
    }
    const year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 59) throw std::invalid_argument("timestamp out of range");
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::vector<SessionRecord> parse_trace(std::istream& in)
{
    std::vector<SessionRecord> records;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, 1, "missing header");
    ++line_no;
    if (line != kTraceHeader) throw ParseError(1, 1, "header must be '" + std::string(kTraceHeader) + "'");

    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split(line, ',');
        if (fields.size() != 5) {
            throw ParseError(line_no, fields.size() < 5 ? fields.size() + 1 : 6,
                             "expected 5 fields, found " + std::to_string(fields.size()));
        }
        SessionRecord rec;
        try {
            rec.timestamp = parse_timestamp(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, 1, e.what());
        }
        if (fields[1].empty()) throw ParseError(line_no, 2, "empty user_id");
        if (fields[2].empty()) throw ParseError(line_no, 3, "empty content_id");
        rec.user_id = fields[1];
        rec.content_id = fields[2];
        auto [ptr, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), rec.bytes);
        if (ec != std::errc() || ptr != fields[3].data() + fields[3].size() || fields[3].empty() || rec.bytes < 1 ||
            fields[3].front() == '+') {
            throw ParseError(line_no, 4, "bytes must be a positive integer");
        }
        try {
            rec.option = parse_option(fields[4]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, 5, e.what());
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_trace(std::ostream& out, std::span<const SessionRecord> records)
{
    out << kTraceHeader << '\n';
    for (const auto& r : records) {
        out << format_timestamp(r.timestamp) << ',' << r.user_id << ',' << r.content_id << ',' << r.bytes << ','
            << to_string(r.option) << '\n';
    }
}

namespace {

std::string padded_id(char prefix, Count index, Count total)
{
    std::string digits = std::to_string(index);
    const std::size_t width = std::max<std::size_t>(4, std::to_string(total).size());
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

}  // namespace

std::vector<SessionRecord> generate_trace(const TraceParams& params)
{
    if (params.users < 1 || params.contents < 1) throw std::invalid_argument("trace needs users >= 1 and contents >= 1");
    if (!(params.premium_prob >= 0.0 && params.premium_prob <= 1.0)) {
        throw std::invalid_argument("premium_prob must lie in [0, 1]");
    }
    if (params.size_bytes < 1 || params.sessions_per_user < 1) {
        throw std::invalid_argument("size_bytes and sessions_per_user must be positive");
    }

    std::mt19937_64 rng(params.seed);
    std::vector<double> weights(static_cast<std::size_t>(params.contents));
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = std::pow(double(i + 1), -params.zipf_exponent);
    std::discrete_distribution<std::size_t> popularity(weights.begin(), weights.end());
    std::bernoulli_distribution premium(params.premium_prob);
    constexpr std::int64_t kMonth = 31LL * 24 * 3600;
    std::uniform_int_distribution<std::int64_t> offset(0, kMonth - 1);
    const Timestamp start = sys_days{year{2014} / July / 1};

    std::vector<SessionRecord> out;
    out.reserve(static_cast<std::size_t>(params.users * params.sessions_per_user));
    for (Count u = 0; u < params.users; ++u) {
        const PremiumOption option = premium(rng) ? PremiumOption::Premium : PremiumOption::Standard;
        const std::string user = padded_id('u', u + 1, params.users);
        for (Count k = 0; k < params.sessions_per_user; ++k) {
            const auto content = static_cast<Count>(popularity(rng));
            out.push_back({start + seconds{offset(rng)}, user, padded_id('c', content + 1, params.contents),
                           params.size_bytes, option});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        return std::tie(l.timestamp, l.user_id, l.content_id) < std::tie(r.timestamp, r.user_id, r.content_id);
    });
    return out;
}

std::vector<ContentCohort> extract_cohorts(std::span<const SessionRecord> records)
{
    struct Acc {
        std::set<std::string> viewers;
        std::set<std::string> premium;
        std::int64_t f = 1;
    };
    std::map<std::string, Acc> by_content;
    for (const auto& r : records) {
        Acc& acc = by_content[r.content_id];
        acc.viewers.insert(r.user_id);
        if (r.option == PremiumOption::Premium) acc.premium.insert(r.user_id);
        acc.f = std::max(acc.f, r.bytes);
    }
    std::vector<ContentCohort> out;
    out.reserve(by_content.size());
    for (auto& [id, acc] : by_content) {
        out.push_back({id, {acc.viewers.begin(), acc.viewers.end()}, static_cast<Count>(acc.premium.size()), acc.f});
    }
    return out;
}

std::vector<std::string> user_pool(std::span<const SessionRecord> records)
{
    std::set<std::string> users;
    for (const auto& r : records) users.insert(r.user_id);
    return {users.begin(), users.end()};
}

std::vector<std::size_t> premium_sample(std::size_t pool_size, std::size_t count, std::uint64_t seed, Count replicate)
{
    std::vector<std::size_t> perm(pool_size);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto rng = replicate_rng(seed, replicate);
    std::shuffle(perm.begin(), perm.end(), rng);
    perm.resize(std::min(count, pool_size));
    return perm;
}

std::vector<CurvePoint> mc_benefit_curve(std::span<const std::string> pool, std::span<const ContentCohort> cohorts,
                                         const CurveParams& params)
{
    if (pool.empty()) throw EmptyPool();
    if (params.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (!(params.n > 1.0) || !(params.r > 1.0)) throw std::invalid_argument("curve needs n > 1 and r > 1");
    for (double q : params.grid) {
        if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("premium fractions must lie in [0, 1]");
    }

    // Viewers as pool indices; viewers outside the pool never become premium.
    std::map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < pool.size(); ++i) index.emplace(pool[i], i);
    std::vector<std::vector<std::size_t>> viewers(cohorts.size());
    std::vector<Count> audience(cohorts.size());
    for (std::size_t c = 0; c < cohorts.size(); ++c) {
        audience[c] = static_cast<Count>(cohorts[c].viewers.size());
        for (const auto& v : cohorts[c].viewers) {
            if (auto it = index.find(v); it != index.end()) viewers[c].push_back(it->second);
        }
    }

    // Prices in units of p_n, content size 1: benefits come out in f p_n units.
    const PriceSchedule<double> prices{1.0, params.r * params.n, params.n, 0.0, 0.0};
    const std::size_t reps = static_cast<std::size_t>(params.replicates);
    Eigen::ArrayXXd benefit(static_cast<Eigen::Index>(params.grid.size()), static_cast<Eigen::Index>(reps));

    std::vector<std::size_t> rank(pool.size());
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto order = premium_sample(pool.size(), pool.size(), params.seed, static_cast<Count>(rep));
        for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;
        for (std::size_t g = 0; g < params.grid.size(); ++g) {
            const auto premium_count =
                static_cast<std::size_t>(std::floor(params.grid[g] * double(pool.size()) + 1e-9));
            double total = 0.0;
            for (std::size_t c = 0; c < cohorts.size(); ++c) {
                Count y = 0;
                for (std::size_t v : viewers[c]) y += rank[v] < premium_count ? 1 : 0;
                total += ben_cp_eq_extended(prices, Cohort{audience[c], y, 1});
            }
            benefit(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(rep)) = total;
        }
    }

    std::vector<CurvePoint> out;
    out.reserve(params.grid.size());
    for (std::size_t g = 0; g < params.grid.size(); ++g) {
        const Eigen::ArrayXd row = benefit.row(static_cast<Eigen::Index>(g)).transpose();
        const bool constant = row.maxCoeff() == row.minCoeff();
        const double mean = constant ? row(0) : row.mean();
        double half = 0.0;
        if (reps > 1 && !constant) {
            const double sd = std::sqrt((row - mean).square().sum() / double(reps - 1));
            half = 1.96 * sd / std::sqrt(double(reps));
        }
        out.push_back({params.grid[g], mean, mean - half, mean + half, params.replicates});
    }
    return out;
}

void write_curve(std::ostream& out, std::span<const CurvePoint> points)
{
    out << kCurveHeader << '\n';
    for (const auto& p : points) {
        out << format_double(p.premium_fraction) << ',' << format_double(p.mean_benefit) << ','
            << format_double(p.ci_low) << ',' << format_double(p.ci_high) << ',' << p.replicates << '\n';
    }
}

}  // namespace hcd
