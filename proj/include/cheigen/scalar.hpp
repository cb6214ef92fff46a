#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

#include "cheigen/errors.hpp"

namespace cheigen {

using BigInt = boost::multiprecision::cpp_int;

enum class Mode { Exact, Float };

inline const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

/// Arbitrary-precision rational kept in canonical form:
/// den > 0, gcd(|num|, den) == 1, and zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }
    bool is_canonical() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    double to_double() const;
    std::string str() const; // "p" when integral, else "p/q"

    /// Exact value of a finite double (every finite double is p / 2^k).
    static Rational from_double_exact(double x);

private:
    BigInt num_;
    BigInt den_;
};

/// Deterministic shortest decimal form of a double (std::to_chars).
std::string double_str(double x);

/// Tagged scalar: an exact rational or a 64-bit float. Arithmetic never
/// mixes the two modes; mixing throws ModeMismatch.
class Scalar {
public:
    Scalar() : mode_(Mode::Exact) {} // exact zero

    static Scalar exact(long long n) { return Scalar(Rational(n)); }
    static Scalar exact(long long n, long long d) { return Scalar(Rational(BigInt(n), BigInt(d))); }
    static Scalar exact(Rational r) { return Scalar(std::move(r)); }
    static Scalar floating(double v);
    static Scalar zero(Mode m) { return m == Mode::Exact ? Scalar() : floating(0.0); }
    static Scalar one(Mode m) { return m == Mode::Exact ? exact(1) : floating(1.0); }

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::Exact; }

    const Rational& rat() const;
    double flt() const;

    double to_double() const;
    Scalar to_mode(Mode m) const;

    bool is_zero() const;
    int sign() const;
    Scalar abs() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);

    std::string str() const;

private:
    explicit Scalar(Rational r) : mode_(Mode::Exact), rat_(std::move(r)) {}

    Mode mode_;
    Rational rat_;     // payload when Exact
    double flt_ = 0.0; // payload when Float
};

/// Reduced form of an exact scalar (sign on the numerator, gcd cleared).
/// Idempotent. Float input is a contract violation (ModeMismatch).
Scalar scalar_canonicalize(const Scalar& s);

} // namespace cheigen
