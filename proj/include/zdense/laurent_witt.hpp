#pragma once

#include "zdense/fp_poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace zdense {

/// Residue mod a prime p.
struct FpElem {
    std::uint64_t p = 2;
    std::uint64_t v = 0;

    FpElem() = default;
    FpElem(std::uint64_t p_, long long value);

    friend FpElem operator+(const FpElem& a, const FpElem& b);
    friend FpElem operator-(const FpElem& a, const FpElem& b);
    friend FpElem operator-(const FpElem& a);
    friend FpElem operator*(const FpElem& a, const FpElem& b);
    friend bool operator==(const FpElem& a, const FpElem& b) { return a.v == b.v; }
};

/// Laurent series over F_p known exactly for exponents <= horizon.
/// Storage is dense over [v_min, horizon]; the zero series has no stored
/// coefficients.
class TruncatedLaurent {
public:
    TruncatedLaurent(std::uint64_t p, long horizon);
    /// sum c_k t^k for the given exponents (all <= horizon).
    TruncatedLaurent(std::uint64_t p, long horizon, const std::map<long, long long>& terms);
    static TruncatedLaurent monomial(std::uint64_t p, long exponent, long horizon,
                                     long long coeff = 1);

    [[nodiscard]] std::uint64_t p() const { return p_; }
    [[nodiscard]] long horizon() const { return horizon_; }
    [[nodiscard]] long v_min() const { return v_min_; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Lowest exponent with nonzero coefficient; empty when zero to the horizon.
    [[nodiscard]] std::optional<long> valuation() const;
    /// Throws HorizonUnderflow for k beyond the horizon.
    [[nodiscard]] std::uint64_t coeff(long k) const;
    [[nodiscard]] std::map<long, std::uint64_t> support() const;

    /// Drops information above `h`; throws HorizonUnderflow if h > horizon.
    [[nodiscard]] TruncatedLaurent truncate(long h) const;
    /// Multiplication by t^k.
    [[nodiscard]] TruncatedLaurent shift(long k) const;
    [[nodiscard]] TruncatedLaurent frobenius() const;
    /// Throws HorizonUnderflow when the series is zero to its horizon.
    [[nodiscard]] TruncatedLaurent inverse() const;
    [[nodiscard]] TruncatedLaurent pow(unsigned e) const;
    [[nodiscard]] TruncatedLaurent scale(std::uint64_t c) const;
    [[nodiscard]] std::string str() const;

    friend TruncatedLaurent operator+(const TruncatedLaurent& a, const TruncatedLaurent& b);
    friend TruncatedLaurent operator-(const TruncatedLaurent& a, const TruncatedLaurent& b);
    friend TruncatedLaurent operator-(const TruncatedLaurent& a);
    friend TruncatedLaurent operator*(const TruncatedLaurent& a, const TruncatedLaurent& b);
    /// Equal coefficients up to the smaller horizon.
    friend bool operator==(const TruncatedLaurent& a, const TruncatedLaurent& b);

private:
    void normalize();
    /// Valuation, or horizon + 1 for the zero series.
    [[nodiscard]] long effective_valuation() const;
    std::uint64_t p_;
    long v_min_ = 0;
    long horizon_;
    std::vector<std::uint64_t> c_;
};

// ---------------------------------------------------------------------------
// Witt vectors of length 2
// ---------------------------------------------------------------------------

inline FpElem ring_const(const FpElem& like, long long c) { return FpElem(like.p, c); }
inline TruncatedLaurent ring_const(const TruncatedLaurent& like, long long c) {
    return TruncatedLaurent(like.p(), like.horizon(), {{0, c}});
}
inline FpElem ring_pow(const FpElem& x, unsigned e) {
    FpElem r(x.p, 1);
    for (unsigned i = 0; i < e; ++i) r = r * x;
    return r;
}
inline TruncatedLaurent ring_pow(const TruncatedLaurent& x, unsigned e) { return x.pow(e); }

/// The coefficients -C(p,i)/p mod p of F(x,z) = sum_{0<i<p} c_i x^i z^{p-i}.
std::vector<std::uint64_t> witt_carry_coefficients(std::uint64_t p);

struct CarryIntegrality {
    std::uint64_t p;
    bool integral;                     // p divides C(p,i) for all 0<i<p
    std::vector<std::string> integer_coeffs;  // -C(p,i)/p before reduction
};
CarryIntegrality witt_carry_integrality(std::uint64_t p);

template <class R>
R witt_carry(const R& x, const R& z, std::uint64_t p) {
    auto coeffs = witt_carry_coefficients(p);
    R sum = ring_const(x, 0);
    for (std::uint64_t i = 1; i < p; ++i) {
        if (coeffs[i] == 0) continue;
        sum = sum + ring_const(x, static_cast<long long>(coeffs[i])) *
                        ring_pow(x, static_cast<unsigned>(i)) *
                        ring_pow(z, static_cast<unsigned>(p - i));
    }
    return sum;
}

template <class R>
struct WittVector2 {
    R x0;
    R x1;
    friend bool operator==(const WittVector2& a, const WittVector2& b) {
        return a.x0 == b.x0 && a.x1 == b.x1;
    }
};

template <class R>
WittVector2<R> witt_add(const WittVector2<R>& a, const WittVector2<R>& b, std::uint64_t p) {
    return {a.x0 + b.x0, a.x1 + b.x1 + witt_carry(a.x0, b.x0, p)};
}

template <class R>
WittVector2<R> witt_neg(const WittVector2<R>& a, std::uint64_t p) {
    R neg = -a.x0;
    return {neg, -a.x1 - witt_carry(a.x0, neg, p)};
}

template <class R>
WittVector2<R> witt_zero(const R& like) {
    return {ring_const(like, 0), ring_const(like, 0)};
}

/// n-fold sum a + ... + a.
template <class R>
WittVector2<R> witt_multiple(const WittVector2<R>& a, unsigned n, std::uint64_t p) {
    WittVector2<R> acc = witt_zero(a.x0);
    for (unsigned i = 0; i < n; ++i) acc = witt_add(acc, a, p);
    return acc;
}

struct WittLawReport {
    std::uint64_t p = 0;
    std::size_t samples = 0;
    std::size_t associativity_failures = 0;
    std::size_t commutativity_failures = 0;
    std::size_t inverse_failures = 0;
    std::size_t identity_failures = 0;
    std::size_t p_multiple_failures = 0;
    [[nodiscard]] bool ok() const {
        return associativity_failures + commutativity_failures + inverse_failures +
                   identity_failures + p_multiple_failures == 0;
    }
};

/// Samples random triples in W_2(F_p) and checks the group laws together
/// with p * (x0, x1) = (0, x0^p).
WittLawReport witt_law_check(std::uint64_t p, std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Gallery scans
// ---------------------------------------------------------------------------

struct Ex1Report {
    std::uint64_t p;
    long horizon;
    std::size_t elements = 0;
    std::size_t pairs_checked = 0;
    std::size_t pairs_certified = 0;
    /// For every pair: the first exponent not divisible by p carrying a
    /// nonzero coefficient of s_i / s_j.
    std::vector<long> witness_exponents{};
    [[nodiscard]] bool all_distinct() const { return pairs_checked == pairs_certified; }
};

/// Elements 1 + t + sum_{k>0} a_k t^{kp} with kp + 1 <= horizon.
std::vector<TruncatedLaurent> ex1_elements(std::uint64_t p, long horizon);
/// First exponent not divisible by p with nonzero coefficient, if any; a
/// p-th power has none.
std::optional<long> non_pth_power_witness(const TruncatedLaurent& x);
/// Checks that the given elements lie in pairwise distinct cosets of k^{*p}.
Ex1Report frobenius_cosets_distinct(const std::vector<TruncatedLaurent>& elements,
                                    std::uint64_t p, long horizon);
Ex1Report ex1_frobenius_coset_scan(std::uint64_t p, long horizon);

struct Ex3Report {
    std::uint64_t p;
    long horizon;
    std::size_t variables = 0;
    std::size_t equations = 0;
    std::size_t solution_dim = 0;     // dimension over F_p of the truncated solution space
    std::string solution_count{};     // p^solution_dim
    bool negative_coefficients_vanish = false;
    bool residue_pattern_holds = false;
    long min_valuation_x = 0;         // over a basis of solutions (horizon+1 if all zero)
    long min_valuation_y = 0;
    std::vector<std::string> conditions{};
};

/// Coefficient conditions of x^p - x = t y^p for x = sum a_k t^k, y = sum b_k t^k,
/// rendered per residue class of the exponent mod p.
std::vector<std::string> ex3_conditions(std::uint64_t p);

/// Solves the truncated coefficient system with all exponents in [-N, N].
Ex3Report ex3_scan(std::uint64_t p, long horizon);

/// Direct check that x^p - x - t y^p vanishes up to the horizon.
bool ex3_member(const TruncatedLaurent& x, const TruncatedLaurent& y);

/// Whether the truncated linear system admits a solution with a_index = 1.
bool ex3_admits_coefficient(std::uint64_t p, long horizon, long index);

/// (x, (y, z)) in G_a x W_2 over F_p((t)).
struct Ex4Element {
    TruncatedLaurent x;
    WittVector2<TruncatedLaurent> w;
};

Ex4Element ex4_power(const Ex4Element& e, std::uint64_t p);

struct Ex4Sample {
    long x_valuation;            // valuation of x (horizon+1 when x = 0)
    bool on_H;
    bool power_matches;          // phi = (0, (0, y^p))
    std::optional<long> image_valuation;
};

struct Ex4Report {
    std::uint64_t p;
    long horizon;
    std::uint64_t seed;
    std::vector<Ex4Sample> samples{};
    bool kernel_contains_A = false;
    std::size_t A_samples = 0;
    std::optional<long> min_image_valuation{};
    std::optional<long> max_image_valuation{};
};

/// Deterministic samples with x of valuation in [-N, N], y = (x^p - x)/t and
/// random z.
Ex4Report ex4_ppower_scan(std::uint64_t p, long horizon, std::size_t sample_size,
                          std::uint64_t seed);

/// Size of the subgroup of W_2(F_p) generated by the given elements.
std::size_t witt_generated_subgroup_size(const std::vector<WittVector2<FpElem>>& gens,
                                         std::uint64_t p);

}  // namespace zdense
