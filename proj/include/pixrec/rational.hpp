#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pixrec {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}                    // NOLINT(google-explicit-constructor)
    Rational(int v) : v_(v) {}                     // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
    /// text or a zero denominator.
    static Rational parse(std::string_view text);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_integer() const { return v_.get_den() == 1; }
    mpz_class floor() const;
    mpz_class ceil() const;
    long floor_long() const;
    long ceil_long() const;
    double to_double() const { return v_.get_d(); }
    std::string str() const;
    int sign() const { return sgn(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// floor(m^r) for integer m >= 1 and rational r > 0, computed exactly.
long floor_pow(long m, const Rational& r);

/// Smallest integer s >= 1 with s >= x^e, x > 0, e > 0 rational, exactly.
long ceil_pow(const Rational& x, const Rational& e);

}  // namespace pixrec

template <>
struct std::hash<pixrec::Rational> {
    std::size_t operator()(const pixrec::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
