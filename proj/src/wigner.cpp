#include "wigner.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace fockpulse {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

// Factorial table; symbols are evaluated thousands of times during sweeps.
// Max argument across the supported range: (k+1)! in the 6-j sum with
// k <= j1+..+j6+1 <= 121 for j <= 20.
constexpr int kMaxFactorial = 200;

const BigInt& factorial(int n) {
    static const auto table = [] {
        std::array<BigInt, kMaxFactorial + 1>* t =
            new std::array<BigInt, kMaxFactorial + 1>();
        (*t)[0] = 1;
        for (int i = 1; i <= kMaxFactorial; ++i) (*t)[i] = (*t)[i - 1] * i;
        return t;
    }();
    return (*table)[n];
}

int parity_sign(int twice_exponent) {
    // exponent is guaranteed integral by the callers
    return (twice_exponent / 2) % 2 == 0 ? 1 : -1;
}

double to_double(const BigRational& rational_part, const BigRational& sum) {
    // value = sqrt(rational_part) * sum, both exact; convert at 100-digit
    // precision so the double result is correctly rounded.
    const BigFloat r(rational_part);
    const BigFloat s(sum);
    return static_cast<double>(sqrt(r) * s);
}

void check_magnitude(HalfInt j, const char* which) {
    if (j.twice() < 0) {
        throw DomainError(std::string(which) + " must be non-negative, got " + j.str());
    }
    if (j.twice() > kMaxTwiceJ) {
        throw DomainError(std::string(which) + " exceeds the supported maximum j=20");
    }
}

// Triangle coefficient Delta(a,b,c) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!
// as an exact rational. Caller has verified the triangle rule.
BigRational triangle_coefficient(HalfInt a, HalfInt b, HalfInt c) {
    const int p = (a.twice() + b.twice() - c.twice()) / 2;
    const int q = (a.twice() - b.twice() + c.twice()) / 2;
    const int r = (-a.twice() + b.twice() + c.twice()) / 2;
    const int s = (a.twice() + b.twice() + c.twice()) / 2 + 1;
    return BigRational(factorial(p) * factorial(q) * factorial(r), factorial(s));
}

} // namespace

SymbolValue wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3,
                      HalfInt m1, HalfInt m2, HalfInt m3) {
    check_magnitude(j1, "j1");
    check_magnitude(j2, "j2");
    check_magnitude(j3, "j3");
    const std::array<std::pair<HalfInt, HalfInt>, 3> pairs = {
        {{j1, m1}, {j2, m2}, {j3, m3}}};
    for (const auto& [j, m] : pairs) {
        if (std::abs(m.twice()) > j.twice()) {
            throw DomainError("projection |m| > j for (j=" + j.str() + ", m=" + m.str() + ")");
        }
        if ((j.twice() + m.twice()) % 2 != 0) {
            throw DomainError("projection parity mismatch for (j=" + j.str() +
                              ", m=" + m.str() + ")");
        }
    }

    if (m1.twice() + m2.twice() + m3.twice() != 0) return {0.0, true};
    if (!triangle_ok(j1, j2, j3)) return {0.0, true};

    // Racah sum bounds.
    const int a1 = (j1.twice() + j2.twice() - j3.twice()) / 2; // j1+j2-j3
    const int a2 = (j1.twice() - m1.twice()) / 2;              // j1-m1
    const int a3 = (j2.twice() + m2.twice()) / 2;              // j2+m2
    const int b1 = (j3.twice() - j2.twice() + m1.twice()) / 2; // j3-j2+m1
    const int b2 = (j3.twice() - j1.twice() - m2.twice()) / 2; // j3-j1-m2
    const int k_lo = std::max({0, -b1, -b2});
    const int k_hi = std::min({a1, a2, a3});

    BigRational sum = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const BigInt den = factorial(k) * factorial(a1 - k) * factorial(a2 - k) *
                           factorial(a3 - k) * factorial(b1 + k) * factorial(b2 + k);
        if (k % 2 == 0) {
            sum += BigRational(1, den);
        } else {
            sum -= BigRational(1, den);
        }
    }
    if (sum == 0) return {0.0, true};

    BigRational radicand = triangle_coefficient(j1, j2, j3);
    for (const auto& [j, m] : pairs) {
        radicand *= factorial((j.twice() + m.twice()) / 2);
        radicand *= factorial((j.twice() - m.twice()) / 2);
    }
    const int sign = parity_sign(j1.twice() - j2.twice() - m3.twice());
    return {sign * to_double(radicand, sum), false};
}

SymbolValue wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3,
                      HalfInt j4, HalfInt j5, HalfInt j6) {
    const std::array<HalfInt, 6> js = {j1, j2, j3, j4, j5, j6};
    static const char* names[] = {"j1", "j2", "j3", "j4", "j5", "j6"};
    for (int i = 0; i < 6; ++i) check_magnitude(js[i], names[i]);

    const std::array<std::array<HalfInt, 3>, 4> triads = {{
        {j1, j2, j3},
        {j1, j5, j6},
        {j4, j2, j6},
        {j4, j5, j3},
    }};
    for (const auto& t : triads) {
        if (!triangle_ok(t[0], t[1], t[2])) return {0.0, true};
    }

    // Triad and quadrilateral sums of the Racah formula.
    std::array<int, 4> t_sum{};
    for (int i = 0; i < 4; ++i) {
        t_sum[i] = (triads[i][0].twice() + triads[i][1].twice() + triads[i][2].twice()) / 2;
    }
    const std::array<int, 3> q_sum = {
        (j1.twice() + j2.twice() + j4.twice() + j5.twice()) / 2,
        (j2.twice() + j3.twice() + j5.twice() + j6.twice()) / 2,
        (j1.twice() + j3.twice() + j4.twice() + j6.twice()) / 2,
    };
    const int k_lo = *std::max_element(t_sum.begin(), t_sum.end());
    const int k_hi = *std::min_element(q_sum.begin(), q_sum.end());

    BigRational sum = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        BigInt den = 1;
        for (const int t : t_sum) den *= factorial(k - t);
        for (const int q : q_sum) den *= factorial(q - k);
        const BigRational term(factorial(k + 1), den);
        if (k % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if (sum == 0) return {0.0, true};

    BigRational radicand = 1;
    for (const auto& t : triads) radicand *= triangle_coefficient(t[0], t[1], t[2]);
    return {to_double(radicand, sum), false};
}

} // namespace fockpulse
