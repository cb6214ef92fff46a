#include "cheigen/scalar.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <limits>

namespace cheigen {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = mp::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

bool Rational::is_canonical() const {
    if (den_ <= 0) return false;
    if (num_ == 0) return den_ == 1;
    return mp::gcd(num_, den_) == 1;
}

namespace {
// Constructors canonicalize; this re-checks the invariant in debug builds.
inline const Rational& checked(const Rational& r) {
    assert(r.is_canonical());
    return r;
}
} // namespace

Rational Rational::operator-() const {
    Rational r;
    r = Rational(-num_, BigInt(den_));
    return checked(r);
}

Rational operator+(const Rational& a, const Rational& b) {
    return checked(Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_));
}

Rational operator-(const Rational& a, const Rational& b) {
    return checked(Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_));
}

Rational operator*(const Rational& a, const Rational& b) {
    return checked(Rational(a.num_ * b.num_, a.den_ * b.den_));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return checked(Rational(a.num_ * b.den_, a.den_ * b.num_));
}

double Rational::to_double() const {
    // cpp_rational rounds correctly even when num/den overflow double alone.
    return mp::cpp_rational(num_, den_).convert_to<double>();
}

std::string Rational::str() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += '/';
        s += den_.str();
    }
    return s;
}

Rational Rational::from_double_exact(double x) {
    if (!std::isfinite(x)) throw Error("cannot convert non-finite double to rational");
    if (x == 0.0) return Rational();
    int exp = 0;
    double frac = std::frexp(x, &exp); // |frac| in [0.5, 1)
    auto mant = static_cast<long long>(std::ldexp(frac, 53));
    exp -= 53;
    BigInt num(mant);
    if (exp >= 0) return Rational(num << exp);
    return Rational(std::move(num), BigInt(1) << -exp);
}

std::string double_str(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

Scalar Scalar::floating(double v) {
    Scalar s;
    s.mode_ = Mode::Float;
    s.flt_ = v;
    return s;
}

const Rational& Scalar::rat() const {
    if (mode_ != Mode::Exact) throw ModeMismatch("rat() on a float scalar");
    return rat_;
}

double Scalar::flt() const {
    if (mode_ != Mode::Float) throw ModeMismatch("flt() on an exact scalar");
    return flt_;
}

double Scalar::to_double() const {
    return mode_ == Mode::Exact ? rat_.to_double() : flt_;
}

Scalar Scalar::to_mode(Mode m) const {
    if (m == mode_) return *this;
    if (m == Mode::Float) return floating(rat_.to_double());
    return exact(Rational::from_double_exact(flt_));
}

bool Scalar::is_zero() const {
    return mode_ == Mode::Exact ? rat_.is_zero() : flt_ == 0.0;
}

int Scalar::sign() const {
    if (mode_ == Mode::Exact) return rat_.sign();
    return flt_ == 0.0 ? 0 : (flt_ < 0.0 ? -1 : 1);
}

Scalar Scalar::abs() const {
    return mode_ == Mode::Exact ? exact(rat_.abs()) : floating(std::fabs(flt_));
}

Scalar Scalar::operator-() const {
    return mode_ == Mode::Exact ? exact(-rat_) : floating(-flt_);
}

namespace {
inline void require_same_mode(const Scalar& a, const Scalar& b, const char* op) {
    if (a.mode() != b.mode())
        throw ModeMismatch(std::string("scalar mode mismatch in ") + op);
}
} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b, "+");
    return a.is_exact() ? Scalar::exact(a.rat_ + b.rat_) : Scalar::floating(a.flt_ + b.flt_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b, "-");
    return a.is_exact() ? Scalar::exact(a.rat_ - b.rat_) : Scalar::floating(a.flt_ - b.flt_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b, "*");
    return a.is_exact() ? Scalar::exact(a.rat_ * b.rat_) : Scalar::floating(a.flt_ * b.flt_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b, "/");
    if (a.is_exact()) return Scalar::exact(a.rat_ / b.rat_);
    if (b.flt_ == 0.0) throw Error("float division by zero");
    return Scalar::floating(a.flt_ / b.flt_);
}

bool operator==(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b, "==");
    return a.is_exact() ? a.rat_ == b.rat_ : a.flt_ == b.flt_;
}

bool operator<(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b, "<");
    return a.is_exact() ? a.rat_ < b.rat_ : a.flt_ < b.flt_;
}

std::string Scalar::str() const {
    return mode_ == Mode::Exact ? rat_.str() : double_str(flt_);
}

Scalar scalar_canonicalize(const Scalar& s) {
    const Rational& r = s.rat(); // throws ModeMismatch on float input
    return Scalar::exact(Rational(r.num(), r.den()));
}

} // namespace cheigen
