#include "hcd/io.hpp"

#include <charconv>
#include <istream>
#include <set>

namespace hcd {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

Role parse_role(std::string_view text, std::size_t line, std::size_t column)
{
    if (text == "premium") return Role::Premium;
    if (text == "standard") return Role::Standard;
    throw ParseError(line, column, "role must be premium or standard, got '" + std::string(text) + "'");
}

UserId parse_user(std::string_view text, std::size_t line, std::size_t column)
{
    if (!text.empty() && text.front() == 'u') text.remove_prefix(1);
    return parse_count(std::string(text), line, column);
}

}  // namespace

std::int64_t parse_count(const std::string& text, std::size_t line, std::size_t column)
{
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
        throw ParseError(line, column, "expected a nonnegative integer, got '" + text + "'");
    }
    return value;
}

KeyValues parse_key_values(std::istream& in)
{
    KeyValues kv;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, 1, "expected key=value");
        std::string key(trim(text.substr(0, eq)));
        std::string value(trim(text.substr(eq + 1)));
        if (key.empty()) throw ParseError(line, 1, "empty key");
        if (!kv.entries.emplace(key, std::make_pair(value, line)).second) {
            throw ParseError(line, 1, "duplicate key '" + key + "'");
        }
    }
    return kv;
}

ScenarioText parse_scenario_text(std::istream& in)
{
    static const std::set<std::string> kPriceKeys{"p_n", "p_b", "p_std", "p_u", "s"};

    ScenarioText out;
    std::map<UserId, std::size_t> agent_index;
    bool have_f = false;
    bool in_body = false;
    std::string raw;
    std::size_t line = 0;

    auto declare = [&](UserId id, Role role, std::size_t at) -> UserAgent& {
        auto it = agent_index.find(id);
        if (it == agent_index.end()) {
            agent_index.emplace(id, out.agents.size());
            out.agents.push_back({id, role, false, false});
            return out.agents.back();
        }
        UserAgent& existing = out.agents[it->second];
        if (existing.role != role) {
            throw ParseError(at, 3, "agent u" + std::to_string(id) + " declared with conflicting roles");
        }
        return existing;
    };

    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = trim(raw);
        if (text.empty() || text.front() == '#') continue;

        if (!have_f) {
            if (text.substr(0, 2) != "f=") throw ParseError(line, 1, "scenario must start with f=<bytes>");
            out.f = parse_count(std::string(trim(text.substr(2))), line, 1);
            if (out.f < 1) throw ParseError(line, 1, "f must be at least 1 byte");
            have_f = true;
            continue;
        }

        if (const auto eq = text.find('='); eq != std::string_view::npos) {
            if (in_body) throw ParseError(line, 1, "price lines must precede requests");
            std::string key(trim(text.substr(0, eq)));
            if (!kPriceKeys.contains(key)) throw ParseError(line, 1, "unknown price key '" + key + "'");
            if (!out.prices.entries.emplace(key, std::make_pair(std::string(trim(text.substr(eq + 1))), line)).second) {
                throw ParseError(line, 1, "duplicate key '" + key + "'");
            }
            continue;
        }

        in_body = true;
        const auto fields = split_fields(text);
        if (fields.front() == "agent") {
            if (fields.size() < 3 || fields.size() > 5) throw ParseError(line, 1, "expected agent,<id>,<role>[,owns][,sharer]");
            UserAgent& agent = declare(parse_user(fields[1], line, 2), parse_role(fields[2], line, 3), line);
            for (std::size_t i = 3; i < fields.size(); ++i) {
                if (fields[i] == "owns") {
                    agent.owns_content = true;
                } else if (fields[i] == "sharer") {
                    agent.designated_sharer = true;
                } else {
                    throw ParseError(line, i + 1, "expected 'owns' or 'sharer'");
                }
            }
            continue;
        }
        if (fields.size() != 3) throw ParseError(line, fields.size() < 3 ? fields.size() + 1 : 4, "expected tick,user_id,role");
        const Tick tick = parse_count(std::string(fields[0]), line, 1);
        const UserId user = parse_user(fields[1], line, 2);
        declare(user, parse_role(fields[2], line, 3), line);
        out.requests.push_back({tick, user});
    }
    if (!have_f) throw ParseError(line + 1, 1, "scenario must start with f=<bytes>");
    return out;
}

}  // namespace hcd
