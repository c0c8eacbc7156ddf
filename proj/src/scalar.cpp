#include "hcd/scalar.hpp"

#include <charconv>
#include <stdexcept>

namespace hcd {

double parse_double(std::string_view text)
{
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        return parse_double(body.substr(0, slash)) / parse_double(body.substr(slash + 1));
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value, std::chars_format::fixed);
    if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
    return value;
}

std::string format_double(double value)
{
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

}  // namespace hcd
