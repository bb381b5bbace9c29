#pragma once

#include "zdense/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zdense {

/// Integer polynomial, coefficients from the constant term upwards.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);

    /// Parses expressions such as "x^3-x-1", "x^2 - 2", "2*x^2+x".
    static IntPoly parse(const std::string& text);

    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<Integer>& coeffs() const { return c_; }
    [[nodiscard]] const Integer& operator[](std::size_t i) const { return c_[i]; }
    [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    [[nodiscard]] IntPoly derivative() const;
    [[nodiscard]] Rational eval(const Rational& x) const;
    [[nodiscard]] BigComplex eval(const BigComplex& z) const;
    [[nodiscard]] Real eval(const Real& x) const;
    [[nodiscard]] Integer max_abs_coeff() const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

private:
    std::vector<Integer> c_;
};

/// Element of Z[theta] in power-basis coordinates (length = degree).
using ZElem = std::vector<Integer>;

// ---------------------------------------------------------------------------
// Signature and embeddings
// ---------------------------------------------------------------------------

struct Signature {
    int r1 = 0;
    int r2 = 0;
    [[nodiscard]] int unit_rank() const { return r1 + r2 - 1; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Number of real roots by Sturm sequence. Throws NotSquarefree.
Signature signature(const IntPoly& f);

/// Number of distinct real roots in the half-open interval (a, b].
int sturm_count(const IntPoly& f, const Rational& a, const Rational& b);

struct EmbeddingData {
    IntPoly poly;
    Signature sig;
    unsigned digits = 30;              // requested absolute precision 10^-digits
    unsigned working_digits = 50;      // precision actually used
    int doublings = 0;
    /// r1 real roots (ascending, im = 0), then r2 representatives with im > 0
    /// ordered by real part then imaginary part.
    std::vector<BigComplex> roots;
    /// All d complex roots: the list above followed by the conjugates.
    [[nodiscard]] std::vector<BigComplex> all_roots() const;
};

/// Throws NotSquarefree, PrecisionUnreachable.
EmbeddingData compute_embeddings(const IntPoly& f, unsigned digits = 30);

/// Real roots isolated by Sturm bisection, refined to the given precision.
std::vector<Real> real_roots(const IntPoly& f, unsigned digits);

// ---------------------------------------------------------------------------
// Exact arithmetic in Z[theta]
// ---------------------------------------------------------------------------

/// Resultant of two integer polynomials (Sylvester determinant, fraction-free).
Integer resultant(const IntPoly& f, const IntPoly& g);
Integer discriminant(const IntPoly& f);

/// N(g(theta)) = Res(f, g) for monic f.
Integer field_norm(const ZElem& element, const IntPoly& f);

ZElem z_one(const IntPoly& f);
ZElem z_mul(const ZElem& a, const ZElem& b, const IntPoly& f);
ZElem z_pow(const ZElem& a, long e, const IntPoly& f);
ZElem z_neg(const ZElem& a);
/// Inverse of a unit; throws Error when the element is not a unit.
ZElem z_unit_inverse(const ZElem& u, const IntPoly& f);

BigComplex embed(const ZElem& element, const BigComplex& root);

// ---------------------------------------------------------------------------
// Irreducibility and monogenicity
// ---------------------------------------------------------------------------

/// Rational-root test (and quadratic factor search for degree 4). For degree
/// above 4 returns nullopt unless `trusted` is set.
std::optional<bool> is_irreducible(const IntPoly& f, bool trusted = false);

struct MonogenicCertificate {
    Integer discriminant;
    std::vector<std::string> primes_checked;  // primes q with q^2 | disc
    bool certified = false;
    std::string reason;
};

/// Certifies that Z[theta] is the maximal order via Dedekind's criterion at
/// every prime whose square divides the discriminant.
MonogenicCertificate monogenic_certificate(const IntPoly& f);

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

struct UnitGroup {
    std::vector<ZElem> units;
    std::vector<Integer> norms;
    int rank = 0;
    int torsion_order = 2;
    std::string method;       // "continued-fraction", "box-search", "supplied", "none"
    long coeff_bound = 0;     // box-search bound (0 when unused)
    std::size_t candidates = 0;
    /// Fundamentality is only certified up to the searched height.
    bool fundamental_certified = false;
};

/// Throws SearchExhausted, RankDeficient, Error for unsupported degrees.
UnitGroup find_fundamental_units(const IntPoly& f, long coeff_bound,
                                 const std::vector<ZElem>& supplied = {});

/// Among +-u and +-u^{-1}, the representative > 1 at the largest real
/// embedding (or with |.| > 1 at the first embedding when there are none).
ZElem normalize_unit(const ZElem& u, const IntPoly& f, const EmbeddingData& emb);

bool is_torsion(const ZElem& u, const IntPoly& f, const EmbeddingData& emb);

/// log|sigma_i(u)| for the r1 + r2 embeddings (complex ones doubled).
std::vector<Real> log_embedding(const ZElem& u, const EmbeddingData& emb);

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

struct TorusRelation {
    std::vector<long> exponents;   // exact relation: prod sigma_i^{n_i} = 1 on all units
    std::vector<long> found_as;    // the first vector found (may give a root of unity)
    int torsion_order = 1;         // order of the value at found_as
};

struct TorusClosure {
    int m = 0;
    std::string flag;              // "witnessed" or "bound-limited"
    long exponent_bound = 0;
    std::vector<TorusRelation> relations;
    /// Integer weights of V under the closure torus (rows per coordinate).
    std::vector<std::vector<long>> weights;
};

/// Throws Error when r = 0.
TorusClosure torus_closure_dim(const UnitGroup& units, const EmbeddingData& emb,
                               long exponent_bound);

struct ConstructedGroup {
    IntPoly poly;
    Signature sig;
    std::vector<ZElem> units;
    std::vector<std::vector<BigComplex>> torus_gens;    // tau(u) per unit
    std::vector<std::vector<BigComplex>> lattice_gens;  // phi(theta^j)
    bool totally_real = false;

    struct Cocompact {
        std::vector<ZElem> delta_units;                   // norm +1 generators
        std::vector<std::vector<BigComplex>> delta_gens;
        std::vector<Real> delta_det_defect;               // |det tau(delta) - 1|
        std::vector<std::vector<BigComplex>> lattice_gens;  // O + iO, 2d vectors
    };
    std::optional<Cocompact> cocompact;

    /// Present for r1 = r2 = 1.
    std::optional<std::string> borel_identification;
    std::vector<Real> det_abs;                            // |det tau(u)| per unit
};

ConstructedGroup build_construction(const IntPoly& f, const UnitGroup& units,
                                    const EmbeddingData& emb);

}  // namespace zdense
