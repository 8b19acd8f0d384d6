#pragma once

#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace pivext {

/// An exact element of Q/Z, stored as a reduced fraction num/den with 0 <= num < den.
/// The value x stands for the root of unity exp(2 pi i x).
class qz {
public:
    constexpr qz() noexcept = default;

    qz(std::int64_t num, std::int64_t den)
    {
        if (den == 0)
            throw error(errc::schema_error, "zero denominator in fraction");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        num %= den;
        if (num < 0)
            num += den;
        const auto g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    /// The element k/n.
    static qz frac(std::int64_t k, std::int64_t n) { return qz(k, n); }

    /// Parses "a/b", "a" or "-a/b"; the result is canonicalized.
    static qz parse(std::string_view text)
    {
        auto read = [&](std::string_view part) {
            std::int64_t v = 0;
            if (!part.empty() && part.front() == '+')
                part.remove_prefix(1);
            const auto* end = part.data() + part.size();
            auto [ptr, ec] = std::from_chars(part.data(), end, v);
            if (part.empty() || ec != std::errc() || ptr != end)
                throw error(errc::schema_error, "malformed fraction \"" + std::string(text) + "\"");
            return v;
        };
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
            text.remove_prefix(1);
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
            text.remove_suffix(1);
        const auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return qz(read(text), 1);
        const auto den_text = text.substr(slash + 1);
        if (!den_text.empty() && den_text.front() == '-')
            throw error(errc::schema_error, "malformed fraction \"" + std::string(text) + "\" (negative denominator)");
        const auto den = read(den_text);
        if (den == 0)
            throw error(errc::schema_error, "malformed fraction \"" + std::string(text) + "\" (zero denominator)");
        return qz(read(text.substr(0, slash)), den);
    }

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }
    constexpr bool is_zero() const noexcept { return num_ == 0; }

    /// Additive order of the element.
    constexpr std::int64_t order() const noexcept { return den_; }

    /// The integer k with x = k/n, assuming den() divides n.
    std::int64_t scaled(std::int64_t n) const
    {
        if (n % den_ != 0)
            throw error(errc::unsupported_parameter, "denominator " + std::to_string(den_) + " does not divide level " +
                                                        std::to_string(n));
        return num_ * (n / den_);
    }

    friend qz operator+(const qz& a, const qz& b)
    {
        const auto l = std::lcm(a.den_, b.den_);
        const auto s = static_cast<__int128>(a.num_) * (l / a.den_) + static_cast<__int128>(b.num_) * (l / b.den_);
        return qz(static_cast<std::int64_t>(s % l), l);
    }
    friend qz operator-(const qz& a) { return qz(a.den_ - a.num_, a.den_); }
    friend qz operator-(const qz& a, const qz& b) { return a + (-b); }
    friend qz operator*(std::int64_t k, const qz& a)
    {
        const auto s = static_cast<__int128>(k % a.den_) * a.num_ % a.den_;
        return qz(static_cast<std::int64_t>(s), a.den_);
    }
    qz& operator+=(const qz& b) { return *this = *this + b; }
    qz& operator-=(const qz& b) { return *this = *this - b; }

    friend constexpr bool operator==(const qz&, const qz&) noexcept = default;

    /// Orders by the representative in [0,1).
    friend constexpr std::strong_ordering operator<=>(const qz& a, const qz& b) noexcept
    {
        const auto lhs = static_cast<__int128>(a.num_) * b.den_;
        const auto rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs != rhs)
            return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const
    {
        if (num_ == 0)
            return "0";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const qz& x) { return os << x.str(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace pivext
