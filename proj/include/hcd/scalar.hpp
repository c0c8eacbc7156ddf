#pragma once

// Scalar abstraction shared by every module. Formulas are written once as
// templates over Scalar and instantiated for `double` (float mode) and
// `Rational` (exact mode).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <concepts>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "hcd/rational.hpp"

namespace hcd {

template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Rational>;

enum class NumericMode { Exact, Float };

/// Relative tolerance for equality checks in float mode.
inline constexpr double kFloatRelTol = 1e-9;

double parse_double(std::string_view text);
std::string format_double(double value);

template <Scalar S>
S parse_scalar(std::string_view text)
{
    if constexpr (std::same_as<S, Rational>) {
        return Rational::parse(text);
    } else {
        return parse_double(text);
    }
}

inline std::string format_scalar(const Rational& v) { return v.str(); }
inline std::string format_scalar(double v) { return format_double(v); }

inline double to_double(const Rational& v) { return v.to_double(); }
inline double to_double(double v) { return v; }

inline bool is_finite(const Rational&) { return true; }
inline bool is_finite(double v) { return std::isfinite(v); }

/// Exact equality for Rational, relative tolerance for double.
inline bool same_value(const Rational& a, const Rational& b, double = kFloatRelTol) { return a == b; }
inline bool same_value(double a, double b, double rel_tol = kFloatRelTol)
{
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel_tol * scale;
}

template <Scalar S>
S from_count(std::int64_t n)
{
    if constexpr (std::same_as<S, Rational>) {
        return Rational(n);
    } else {
        return static_cast<double>(n);
    }
}

}  // namespace hcd

namespace Eigen {

template <>
struct NumTraits<hcd::Rational> : GenericNumTraits<hcd::Rational> {
    typedef hcd::Rational Real;
    typedef hcd::Rational NonInteger;
    typedef hcd::Rational Nested;
    typedef hcd::Rational Literal;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 8,
        MulCost = 16
    };

    static inline Real epsilon() { return hcd::Rational(0); }
    static inline Real dummy_precision() { return hcd::Rational(0); }
    static inline Real highest() { return hcd::Rational(std::numeric_limits<std::int64_t>::max()); }
    static inline Real lowest() { return hcd::Rational(std::numeric_limits<std::int64_t>::min() + 1); }
    static inline int digits10() { return 18; }
};

}  // namespace Eigen
