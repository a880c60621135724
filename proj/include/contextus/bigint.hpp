#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace contextus {

// Arbitrary-precision signed integer, sign-magnitude with base-10^9 limbs.
// Sizes in this project stay small (a few limbs), so everything is schoolbook.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    static BigInt from_string(std::string_view s);

    bool is_zero() const { return mag_.empty(); }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }
    bool is_odd() const { return !mag_.empty() && (mag_[0] & 1u); }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    // Truncated division (C semantics): quotient rounds toward zero,
    // remainder has the sign of the dividend.
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }
    BigInt& operator/=(const BigInt& b) { return *this = *this / b; }

    // -1, 0, +1 as `a` compares to `b`.
    static int cmp(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    std::string str() const;

    // Value as long long; only valid when it fits (asserted).
    long long to_ll() const;
    bool fits_ll() const;

private:
    static constexpr std::uint32_t kBase = 1000000000u;
    int sign_ = 0;                   // -1, 0, +1; 0 iff mag_ empty
    std::vector<std::uint32_t> mag_; // little-endian limbs, no leading zeros

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& a,
                           const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& quot,
                           std::vector<std::uint32_t>& rem);
};

BigInt gcd(BigInt a, BigInt b);

} // namespace contextus
