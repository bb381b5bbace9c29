#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace zdense {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

/// Parses "num/den" or a bare integer "num". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Renders "num/den" with den > 0, or a bare integer when den = 1.
std::string format_rational(const Rational& value);

/// Sets the default MPFR precision (decimal digits) for the lifetime of the
/// scope. Values created inside the scope carry that precision.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/// Complex number over Real. Only what root finding and embeddings need.
struct BigComplex {
    Real re{0};
    Real im{0};

    BigComplex() = default;
    BigComplex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

    [[nodiscard]] Real norm2() const { return re * re + im * im; }
    [[nodiscard]] Real abs() const { return boost::multiprecision::sqrt(norm2()); }
    [[nodiscard]] Real arg() const { return boost::multiprecision::atan2(im, re); }
    [[nodiscard]] BigComplex conj() const { return {re, -im}; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        Real d = b.norm2();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
    BigComplex& operator-=(const BigComplex& b) { return *this = *this - b; }
    BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }
};

BigComplex pow(const BigComplex& base, long exponent);

/// Fixed-point-free decimal rendering with the given number of significant
/// digits; deterministic for a fixed value and digit count.
std::string to_decimal(const Real& value, unsigned digits10);

/// Binary digits needed to carry `digits10` decimal digits plus guard bits.
unsigned working_digits(unsigned digits10);

}  // namespace zdense
