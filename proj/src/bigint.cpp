#include "contextus/bigint.hpp"

#include "contextus/error.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace contextus {

namespace {
constexpr std::uint32_t kBase = 1000000000u;
constexpr int kBaseDigits = 9;
} // namespace

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // Avoid overflow on LLONG_MIN by working in unsigned space.
    unsigned long long u = v < 0 ? 0ull - static_cast<unsigned long long>(v)
                                 : static_cast<unsigned long long>(v);
    while (u != 0) {
        mag_.push_back(static_cast<std::uint32_t>(u % kBase));
        u /= kBase;
    }
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw ParseError("empty integer literal", 0);
    std::size_t pos = 0;
    int sign = 1;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1 : 1;
        pos = 1;
    }
    if (pos == s.size()) throw ParseError("integer literal has no digits", pos);
    for (std::size_t i = pos; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw ParseError("invalid digit in integer literal", i);

    BigInt out;
    for (std::size_t end = s.size(); end > pos;) {
        std::size_t begin = end >= pos + kBaseDigits ? end - kBaseDigits : pos;
        std::uint32_t limb = 0;
        for (std::size_t i = begin; i < end; ++i) limb = limb * 10 + static_cast<std::uint32_t>(s[i] - '0');
        out.mag_.push_back(limb);
        end = begin;
    }
    out.sign_ = sign;
    out.trim();
    return out;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
    else if (sign_ == 0) sign_ = 1;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int m = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? m : -m;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(std::max(a.size(), b.size()) + 1, 0u);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        out[i] = static_cast<std::uint32_t>(s % kBase);
        carry = static_cast<std::uint32_t>(s / kBase);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    assert(cmp_mag(a, b) >= 0);
    std::vector<std::uint32_t> out = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::int64_t t = static_cast<std::int64_t>(out[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (t < 0) {
            t += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<std::uint32_t>(t);
    }
    assert(borrow == 0);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size(), 0u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        std::size_t k = i + b.size();
        while (carry != 0) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Knuth algorithm D in base 10^9.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b,
                        std::vector<std::uint32_t>& quot,
                        std::vector<std::uint32_t>& rem) {
    assert(!b.empty());
    quot.clear();
    rem.clear();
    if (cmp_mag(a, b) < 0) {
        rem = a;
        return;
    }
    if (b.size() == 1) {
        std::uint32_t d = b[0];
        quot.assign(a.size(), 0u);
        std::uint64_t r = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            std::uint64_t cur = r * kBase + a[i];
            quot[i] = static_cast<std::uint32_t>(cur / d);
            r = cur % d;
        }
        while (!quot.empty() && quot.back() == 0) quot.pop_back();
        if (r != 0) rem.push_back(static_cast<std::uint32_t>(r));
        return;
    }

    std::uint32_t d = kBase / (b.back() + 1);
    std::vector<std::uint32_t> u = mul_mag(a, {d});
    std::vector<std::uint32_t> v = mul_mag(b, {d});
    const std::size_t n = v.size();
    u.resize(a.size() + 1, 0u); // room for the running top limb
    const std::size_t m = u.size() - n - 1;
    quot.assign(m + 1, 0u);

    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = static_cast<std::uint64_t>(u[j + n]) * kBase + u[j + n - 1];
        std::uint64_t qhat = num / v[n - 1];
        std::uint64_t rhat = num % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > rhat * kBase + u[j + n - 2]) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }
        // u[j .. j+n] -= qhat * v
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * v[i] + carry;
            carry = p / kBase;
            std::int64_t t = static_cast<std::int64_t>(u[j + i]) -
                             static_cast<std::int64_t>(p % kBase) - borrow;
            if (t < 0) {
                t += kBase;
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[j + i] = static_cast<std::uint32_t>(t);
        }
        std::int64_t top = static_cast<std::int64_t>(u[j + n]) -
                           static_cast<std::int64_t>(carry) - borrow;
        if (top < 0) {
            // qhat was one too large; add v back
            --qhat;
            std::uint32_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = static_cast<std::uint64_t>(u[j + i]) + v[i] + c;
                u[j + i] = static_cast<std::uint32_t>(s % kBase);
                c = static_cast<std::uint32_t>(s / kBase);
            }
            top += c;
        }
        assert(top >= 0 && top < static_cast<std::int64_t>(kBase));
        u[j + n] = static_cast<std::uint32_t>(top);
        quot[j] = static_cast<std::uint32_t>(qhat);
    }
    while (!quot.empty() && quot.back() == 0) quot.pop_back();

    // Remainder is u[0..n-1] divided by the normalisation factor.
    u.resize(n);
    while (!u.empty() && u.back() == 0) u.pop_back();
    if (d == 1) {
        rem = u;
    } else {
        std::vector<std::uint32_t> dummy;
        divmod_mag(u, {d}, rem, dummy);
        assert(dummy.empty());
    }
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    if (out.sign_ < 0) out.sign_ = 1;
    return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    BigInt out;
    if (a.sign_ == b.sign_) {
        out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
        out.sign_ = a.sign_;
    } else {
        int c = BigInt::cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
            out.sign_ = a.sign_;
        } else {
            out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
            out.sign_ = b.sign_;
        }
    }
    out.trim();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt out;
    out.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    out.sign_ = out.mag_.empty() ? 0 : a.sign_ * b.sign_;
    return out;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw Error("division by zero");
    BigInt q;
    std::vector<std::uint32_t> rem;
    BigInt::divmod_mag(a.mag_, b.mag_, q.mag_, rem);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    q.trim();
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw Error("division by zero");
    BigInt r;
    std::vector<std::uint32_t> quot;
    BigInt::divmod_mag(a.mag_, b.mag_, quot, r.mag_);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    r.trim();
    return r;
}

std::string BigInt::str() const {
    if (mag_.empty()) return "0";
    std::string out = sign_ < 0 ? "-" : "";
    out += std::to_string(mag_.back());
    for (std::size_t i = mag_.size() - 1; i-- > 0;) {
        std::string limb = std::to_string(mag_[i]);
        out += std::string(kBaseDigits - limb.size(), '0') + limb;
    }
    return out;
}

bool BigInt::fits_ll() const {
    if (mag_.size() > 3) return false;
    unsigned __int128 v = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * kBase + mag_[i];
    unsigned __int128 limit = static_cast<unsigned __int128>(1) << 63;
    return sign_ < 0 ? v <= limit : v < limit;
}

long long BigInt::to_ll() const {
    assert(fits_ll());
    unsigned long long v = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * kBase + mag_[i];
    if (sign_ < 0) return static_cast<long long>(0ull - v);
    return static_cast<long long>(v);
}

BigInt gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

} // namespace contextus
