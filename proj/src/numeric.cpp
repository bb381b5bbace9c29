#include "zdense/numeric.hpp"

#include "zdense/errors.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

namespace zdense {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                           : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
        throw ParseError("not a rational literal: '" + std::string(text) + "'");
    }
    Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
    Integer d(std::string(den[0] == '+' ? den.substr(1) : den));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
}

std::string format_rational(const Rational& value) {
    if (boost::multiprecision::denominator(value) == 1) return boost::multiprecision::numerator(value).str();
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

BigComplex pow(const BigComplex& base, long exponent) {
    if (exponent < 0) return BigComplex(Real(1)) / pow(base, -exponent);
    BigComplex result(Real(1));
    BigComplex b = base;
    while (exponent > 0) {
        if (exponent & 1) result *= b;
        b *= b;
        exponent >>= 1;
    }
    return result;
}

std::string to_decimal(const Real& value, unsigned digits10) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(static_cast<int>(digits10)) << value;
    return os.str();
}

unsigned working_digits(unsigned digits10) { return digits10 + 20; }

}  // namespace zdense
