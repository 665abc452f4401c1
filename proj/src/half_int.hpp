#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <string>

#include "error.hpp"

namespace fockpulse {

// Half-integer angular momentum value, stored as twice its value so that
// j = 3/2 is exact. Used for j, F, I magnitudes and m projections alike.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(int v) { return HalfInt(2 * v); }

    // Accepts only exact integers or half-integers (0.5, -1.5, ...).
    static HalfInt from_double(double v) {
        const double twice = 2.0 * v;
        const double rounded = std::round(twice);
        if (std::abs(twice - rounded) > 1e-9) {
            throw DomainError("value " + std::to_string(v) +
                              " is not an integer or half-integer");
        }
        return HalfInt(static_cast<int>(rounded));
    }

    // Accepts "2", "-1", "3/2", "-5/2".
    static HalfInt from_string(const std::string& s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                return from_int(std::stoi(s));
            }
            const int num = std::stoi(s.substr(0, slash));
            const int den = std::stoi(s.substr(slash + 1));
            if (den == 2) return from_twice(num);
            if (den == 1) return from_int(num);
        } catch (const std::exception&) {
            // fall through to the error below
        }
        throw DomainError("cannot parse '" + s + "' as a half-integer");
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
        return HalfInt(a.twice_ + b.twice_);
    }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
        return HalfInt(a.twice_ - b.twice_);
    }
    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

private:
    constexpr explicit HalfInt(int twice) : twice_(twice) {}
    int twice_ = 0;
};

// Triangle rule |a-b| <= c <= a+b with integer perimeter.
constexpr bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
    if ((a.twice() + b.twice() + c.twice()) % 2 != 0) return false;
    return std::abs(a.twice() - b.twice()) <= c.twice() &&
           c.twice() <= a.twice() + b.twice();
}

} // namespace fockpulse
