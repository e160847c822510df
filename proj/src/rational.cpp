#include "pixrec/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pixrec {

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    const auto numText = text.substr(0, slash);
    if (!is_integer_text(numText))
        throw std::invalid_argument("Rational: malformed numerator in '" + std::string(text) + "'");
    mpz_class n(strip_plus(numText), 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
        const auto denText = text.substr(slash + 1);
        if (!is_integer_text(denText) || denText[0] == '-' || denText[0] == '+')
            throw std::invalid_argument("Rational: malformed denominator in '" + std::string(text) + "'");
        d = mpz_class(std::string(denText), 10);
        if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

long Rational::floor_long() const {
    const mpz_class f = floor();
    if (!f.fits_slong_p()) throw std::overflow_error("Rational::floor_long overflow");
    return f.get_si();
}

long Rational::ceil_long() const {
    const mpz_class c = ceil();
    if (!c.fits_slong_p()) throw std::overflow_error("Rational::ceil_long overflow");
    return c.get_si();
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

long floor_pow(long m, const Rational& r) {
    if (m < 1 || r.sign() <= 0) throw std::invalid_argument("floor_pow: need m >= 1, r > 0");
    // s = floor(m^(p/q))  <=>  s^q <= m^p < (s+1)^q
    const unsigned long p = r.num().get_ui();
    const unsigned long q = r.den().get_ui();
    mpz_class target;
    mpz_ui_pow_ui(target.get_mpz_t(), static_cast<unsigned long>(m), p);
    mpz_class root;
    mpz_root(root.get_mpz_t(), target.get_mpz_t(), q);
    return root.get_si();
}

long ceil_pow(const Rational& x, const Rational& e) {
    if (x.sign() <= 0 || e.sign() <= 0) throw std::invalid_argument("ceil_pow: need x > 0, e > 0");
    // s >= (a/b)^(p/q)  <=>  s^q * b^p >= a^p
    const unsigned long p = e.num().get_ui();
    const unsigned long q = e.den().get_ui();
    mpz_class ap, bp;
    mpz_pow_ui(ap.get_mpz_t(), x.num().get_mpz_t(), p);
    mpz_pow_ui(bp.get_mpz_t(), x.den().get_mpz_t(), p);
    // initial guess from floating point, then correct exactly
    double guess = std::pow(x.to_double(), e.to_double());
    long s = guess < 1.0 ? 1 : static_cast<long>(guess);
    auto ok = [&](long cand) {
        mpz_class sq;
        mpz_ui_pow_ui(sq.get_mpz_t(), static_cast<unsigned long>(cand), q);
        return sq * bp >= ap;
    };
    while (s > 1 && ok(s - 1)) --s;
    while (!ok(s)) ++s;
    return s;
}

}  // namespace pixrec
