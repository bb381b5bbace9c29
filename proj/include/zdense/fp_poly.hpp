#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zdense {

/// Dense polynomial over F_p, coefficients c[0] + c[1] x + ...; the zero
/// polynomial has no coefficients and a nonzero one has a nonzero leading term.
class FpPoly {
public:
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs = {});
    /// Reduces signed integer coefficients mod p.
    static FpPoly from_signed(std::uint64_t p, const std::vector<long long>& coeffs);

    [[nodiscard]] std::uint64_t p() const { return p_; }
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::vector<std::uint64_t>& coeffs() const { return c_; }
    [[nodiscard]] std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

    [[nodiscard]] FpPoly derivative() const;
    [[nodiscard]] FpPoly monic() const;
    [[nodiscard]] std::string str() const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b) = default;

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
    static FpPoly gcd(FpPoly a, FpPoly b);
    static FpPoly pow(const FpPoly& base, unsigned e);

private:
    void trim();
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

/// Squarefree part over F_p (product of the distinct monic irreducible factors).
FpPoly radical(const FpPoly& f);

}  // namespace zdense
