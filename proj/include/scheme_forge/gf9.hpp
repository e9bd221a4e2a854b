#pragma once

#include <array>
#include <cstdint>
#include <ostream>

namespace scheme_forge {

/// Element c0 + c1*w of GF(9) = GF(3)[w]/(w^2 + 1), packed as c0 + 3*c1.
class GF9 {
public:
    static constexpr int order = 9;

    constexpr GF9() = default;
    constexpr GF9(int c0, int c1) : v_(static_cast<std::uint8_t>(mod3(c0) + 3 * mod3(c1))) {}
    static constexpr GF9 from_index(int i) { return GF9(i % 3, i / 3); }
    static constexpr GF9 zero() { return {}; }
    static constexpr GF9 one() { return GF9(1, 0); }
    static constexpr GF9 omega() { return GF9(0, 1); }

    constexpr int index() const { return v_; }
    constexpr int c0() const { return v_ % 3; }
    constexpr int c1() const { return v_ / 3; }
    constexpr bool is_zero() const { return v_ == 0; }

    friend constexpr GF9 operator+(GF9 a, GF9 b) { return GF9(a.c0() + b.c0(), a.c1() + b.c1()); }
    friend constexpr GF9 operator-(GF9 a, GF9 b) { return GF9(a.c0() - b.c0(), a.c1() - b.c1()); }
    constexpr GF9 operator-() const { return GF9(-c0(), -c1()); }
    // (a0 + a1 w)(b0 + b1 w) = a0 b0 - a1 b1 + (a0 b1 + a1 b0) w
    friend constexpr GF9 operator*(GF9 a, GF9 b) {
        return GF9(a.c0() * b.c0() - a.c1() * b.c1(), a.c0() * b.c1() + a.c1() * b.c0());
    }
    friend constexpr bool operator==(GF9, GF9) = default;

    /// Multiplicative inverse; zero maps to zero.
    constexpr GF9 inverse() const {
        // x^{-1} = x^7 in GF(9)*
        GF9 r = one();
        for (int i = 0; i < 7; ++i)
            r = r * *this;
        return r;
    }
    friend constexpr GF9 operator/(GF9 a, GF9 b) { return a * b.inverse(); }

    /// x -> x^3, the involutory automorphism fixing GF(3).
    constexpr GF9 frobenius() const { return *this * *this * *this; }

    /// x^4 = x * x^3, which always lies in GF(3).
    constexpr GF9 norm() const { return *this * frobenius(); }

    static constexpr std::array<GF9, 9> all() {
        std::array<GF9, 9> out{};
        for (int i = 0; i < 9; ++i)
            out[i] = from_index(i);
        return out;
    }

private:
    static constexpr int mod3(int x) { return ((x % 3) + 3) % 3; }
    std::uint8_t v_ = 0;
};

std::ostream& operator<<(std::ostream& os, GF9 x);

} // namespace scheme_forge
