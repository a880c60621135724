#include "contextus/rational.hpp"

#include "contextus/error.hpp"

namespace contextus {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("rational with zero denominator");
    normalise();
}

void Rational::normalise() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt::from_string(s));
    BigInt num = BigInt::from_string(s.substr(0, slash));
    BigInt den = BigInt::from_string(s.substr(slash + 1));
    if (den.is_zero()) throw ParseError("zero denominator", slash + 1);
    return Rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

int Rational::cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

std::string Rational::str() const {
    if (is_integer()) return num_.str();
    return num_.str() + "/" + den_.str();
}

GaussianRational GaussianRational::inverse() const {
    Rational n2 = norm2();
    if (n2.is_zero()) throw Error("inverse of zero");
    return {re_ / n2, -im_ / n2};
}

std::string GaussianRational::str() const {
    if (im_.is_zero()) return re_.str();
    std::string im = im_.str() + "i";
    if (re_.is_zero()) return im;
    return im_.is_negative() ? re_.str() + im : re_.str() + "+" + im;
}

} // namespace contextus
