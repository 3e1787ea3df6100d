#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace filippov {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always reduced, denominator >= 1, zero is 0/1.
/// Serializes as "p/q", or "p" when q = 1.
class Rational {
public:
    Rational() = default;
    Rational(int v) : value_(v) {}
    Rational(long long v) : value_(v) {}
    Rational(const BigInt& v) : value_(v) {}

    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        // cpp_rational's (n, d) constructor rejects negative denominators.
        if (den < 0)
            value_ = boost::multiprecision::cpp_rational(-num, -den);
        else
            value_ = boost::multiprecision::cpp_rational(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational parse(std::string_view text) {
        auto bad = [&] {
            return std::invalid_argument("Rational: cannot parse \"" + std::string(text) + "\"");
        };
        if (text.empty())
            throw bad();
        const auto slash = text.find('/');
        const std::string_view num_part = text.substr(0, slash);
        if (!is_signed_integer(num_part))
            throw bad();
        if (slash == std::string_view::npos)
            return Rational(BigInt(std::string(num_part)));
        const std::string_view den_part = text.substr(slash + 1);
        if (!is_signed_integer(den_part))
            throw bad();
        return Rational(BigInt(std::string(num_part)), BigInt(std::string(den_part)));
    }

    BigInt num() const { return numerator(value_); }
    BigInt den() const { return denominator(value_); }

    bool is_zero() const { return value_.is_zero(); }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return denominator(value_) == 1; }
    int sign() const { return value_.sign(); }

    Rational operator-() const { return Rational(boost::multiprecision::cpp_rational(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    std::string str() const {
        if (is_integer())
            return num().str();
        return num().str() + "/" + den().str();
    }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}

    static bool is_signed_integer(std::string_view s) {
        if (!s.empty() && s.front() == '-')
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    }

    boost::multiprecision::cpp_rational value_;
};

} // namespace filippov
