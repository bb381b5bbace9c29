#pragma once

#include "zdense/group_spec.hpp"
#include "zdense/numeric.hpp"
#include "zdense/relation.hpp"
#include "zdense/schema.hpp"

#include <array>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace zdense {

using cplx = std::complex<double>;

/// Integer 2x2 matrix [[a, b], [c, d]] stored row-major.
using IntMat2 = std::array<long long, 4>;

struct AffineElement {
    std::string name;
    std::vector<BigComplex> diag;
    std::vector<BigComplex> translation;
};

struct MatrixElement {
    std::string name;
    std::array<BigComplex, 4> m;             // row-major
    std::optional<IntMat2> exact;            // present when the matrix is integral
    std::vector<BigComplex> translation;     // empty or length 2
};

struct GeneratorSet {
    enum class Kind { Affine, Matrix2x2 };
    Kind kind = Kind::Affine;
    int dim = 0;  // dimension of the translation part
    std::vector<AffineElement> affine;
    std::vector<MatrixElement> matrices;

    [[nodiscard]] std::size_t size() const {
        return kind == Kind::Affine ? affine.size() : matrices.size();
    }
    [[nodiscard]] std::vector<std::string> names() const;
};

GeneratorSet make_affine_set(int dim);
MatrixElement make_int_matrix(const std::string& name, const IntMat2& m);

json generator_set_to_json(const GeneratorSet& gens, unsigned digits);
/// Validates against the generator set schema. Throws SchemaError, ParseError.
GeneratorSet generator_set_from_json(const json& doc);

// ---------------------------------------------------------------------------
// Ping-pong
// ---------------------------------------------------------------------------

struct PingPongRegion {
    std::string generator;   // e.g. "A", "A^-1"
    std::string region;      // interval or strip description
};

struct PingPongCertificate {
    bool certified = false;
    std::string reason;
    std::vector<PingPongRegion> regions;
};

/// Exact ping-pong table on the real projective line for integer matrices
/// in SL_2(Z). `false` means "not certified", never "not free".
PingPongCertificate pingpong_certificate(const IntMat2& a, const IntMat2& b);
PingPongCertificate pingpong_certificate(const MatrixElement& a, const MatrixElement& b);

IntMat2 int_mul(const IntMat2& x, const IntMat2& y);
IntMat2 int_inverse(const IntMat2& x);  // for det 1
IntMat2 int_pow(const IntMat2& x, long e);

struct WordSearchResult {
    std::size_t words_checked = 0;
    std::optional<std::string> identity_word;
    bool overflow = false;
};

/// Depth-first search over nonempty reduced words in A, B of length <= L for
/// one evaluating exactly to the identity.
WordSearchResult exact_identity_word_search(const IntMat2& a, const IntMat2& b, int max_len);

// ---------------------------------------------------------------------------
// Lifting into S x| V
// ---------------------------------------------------------------------------

/// Generators b_0 = f_0, b_1 = f_1, b_i = c_i s_i with rho(c_i) = f_i^{n_i}, where
/// f_j = B^j A B^{-j}. Throws SpanDeficient.
GeneratorSet lift_discrete_dense(const GeneratorSet& free_gens,
                                 const std::vector<std::vector<cplx>>& kernel_sample,
                                 const std::vector<long>& twist_exponents);

/// The images rho(b_i) as reduced words in the letters of the free pair
/// (A = 0, A^-1 = 1, B = 2, B^-1 = 3).
std::vector<std::vector<int>> lift_projection_words(std::size_t count,
                                                    const std::vector<long>& twist_exponents);

struct FreeBasisReport {
    std::size_t generators = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t rank = 0;      // edges - vertices + 1 of the folded graph
    bool free_basis = false;   // rank equals the number of generators
};

/// Stallings folding of the subgroup of F(A, B) generated by the words.
FreeBasisReport stallings_free_basis(const std::vector<std::vector<int>>& words);

struct InjectivityReport {
    int max_len = 0;
    std::size_t words = 0;              // reduced words including the empty word
    std::size_t hash_collisions = 0;    // distinct matrices with equal hashes
    std::optional<std::pair<std::string, std::string>> clash;  // same projection
    [[nodiscard]] bool injective() const { return !clash.has_value(); }
};

/// Enumerates reduced words of length <= L in the projected (exact integer)
/// generators and checks that distinct words give distinct matrices.
InjectivityReport projection_injectivity(const GeneratorSet& lifted, int max_len);

// ---------------------------------------------------------------------------
// Discreteness and density evidence
// ---------------------------------------------------------------------------

struct MarginReport {
    int word_length = 0;
    double ball_radius = 0;
    double min_distance = std::numeric_limits<double>::infinity();
    std::string attained_word;
    std::size_t element_count = 0;
    std::size_t in_ball = 0;
    std::size_t cap = 0;
    [[nodiscard]] bool infinite() const { return min_distance == std::numeric_limits<double>::infinity(); }
};

constexpr std::size_t kDefaultWordCap = 10'000'000;

/// Breadth-first enumeration of reduced words with coordinates deduplicated at
/// 1e-12. Throws ExplosionGuard.
MarginReport discreteness_margin(const GeneratorSet& gens, int max_len, double radius,
                                 std::size_t cap = kDefaultWordCap);

struct IndependenceResult {
    bool independent = true;      // up to the bound
    long bound = 0;
    std::optional<MultiplicativeRelation> relation;
};

IndependenceResult multiplicative_independence(const std::vector<BigComplex>& values,
                                               long exponent_bound);

struct DensityReport {
    bool torus_ok = false;
    bool translation_ok = false;
    bool support_ok = false;
    long exponent_bound = 0;
    std::size_t translation_rank = 0;
    std::vector<std::string> notes;
    [[nodiscard]] bool pass() const { return torus_ok && translation_ok && support_ok; }
};

/// Throws ShapeMismatch.
DensityReport density_check(const GeneratorSet& gens, const GroupSpec& spec,
                            long exponent_bound = 20);

}  // namespace zdense
