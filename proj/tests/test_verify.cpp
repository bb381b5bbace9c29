#include "oracles.hpp"

#include "zdense/construct.hpp"
#include "zdense/errors.hpp"
#include "zdense/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace zdense;

namespace {

GeneratorSet sanov_pair() {
    GeneratorSet g;
    g.kind = GeneratorSet::Kind::Matrix2x2;
    g.matrices = {make_int_matrix("A", {1, 2, 0, 1}), make_int_matrix("B", {1, 0, 2, 1})};
    return g;
}

GroupSpec sl2_on_c2() {
    LeviData levi;
    levi.radical.unipotent = UnipotentPart(2);
    levi.radical.action.weights = {{}, {}};
    levi.is_semidirect_over_k = true;
    return GroupSpec{levi, "sl2_c2"};
}

const std::vector<std::vector<cplx>> kGaussianSample{{1.0, 0.0}, {0.0, 1.0}, {cplx(0, 1), 0.0}, {0.0, cplx(0, 1)}};

const ConstructionRun& sqrt2_run() {
    static const ConstructionRun run = run_construction(IntPoly::parse("x^2-2"));
    return run;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("integer matrix helpers") {
    const IntMat2 a{2, 1, 1, 1};
    CHECK(int_mul(a, int_inverse(a)) == IntMat2{1, 0, 0, 1});
    CHECK(int_pow(a, 3) == oracle::mul(oracle::mul(a, a), a));
    CHECK(int_pow(a, -2) == int_mul(int_inverse(a), int_inverse(a)));
    CHECK_THROWS(int_pow({1, 1LL << 40, 0, 1}, 1LL << 30));
}

TEST_CASE("Sanov pair: certificate and exhaustive word search") {
    const auto cert = pingpong_certificate(IntMat2{1, 2, 0, 1}, IntMat2{1, 0, 2, 1});
    CHECK(cert.certified);
    CHECK(cert.regions.size() == 2);
    const auto ws = exact_identity_word_search({1, 2, 0, 1}, {1, 0, 2, 1}, 10);
    CHECK_FALSE(ws.identity_word.has_value());
    CHECK_FALSE(ws.overflow);
    CHECK(ws.words_checked == oracle::reduced_word_count(2, 10) - 1);
}

TEST_CASE("ping-pong certification implies no short identity word") {
    std::vector<std::pair<IntMat2, IntMat2>> pairs;
    for (long long k = 1; k <= 4; ++k)
        for (long long l = 1; l <= 4; ++l) pairs.push_back({{1, k, 0, 1}, {1, 0, l, 1}});
    pairs.push_back({{2, 1, 1, 1}, {1, 1, 1, 2}});
    pairs.push_back({{5, 2, 2, 1}, {1, -2, -2, 5}});
    pairs.push_back({{0, -1, 1, 0}, {1, 1, 0, 1}});
    pairs.push_back({{3, 0, 0, 1}, {1, 1, 0, 1}});
    int certified = 0;
    for (const auto& [a, b] : pairs) {
        const auto cert = pingpong_certificate(a, b);
        if (!cert.certified) continue;
        ++certified;
        const auto [words, identity] = oracle::naive_identity_search(a, b, 8);
        CHECK_FALSE(identity);
        CHECK(words == oracle::reduced_word_count(2, 8) - 1);
    }
    CHECK(certified >= 9);  // every k * l >= 4 parabolic pair
}

TEST_CASE("pairs that are not free are never certified") {
    CHECK_FALSE(pingpong_certificate(IntMat2{1, 1, 0, 1}, IntMat2{1, 0, 1, 1}).certified);
    CHECK_FALSE(pingpong_certificate(IntMat2{0, -1, 1, 0}, IntMat2{1, 1, 0, 1}).certified);
    const auto ws = exact_identity_word_search({0, -1, 1, 0}, {1, 1, 0, 1}, 6);
    REQUIRE(ws.identity_word.has_value());
    CHECK(*ws.identity_word == "A A A A");
    const auto ref = oracle::naive_identity_search({1, 1, 0, 1}, {1, 0, 1, 1}, 10);
    const auto lib = exact_identity_word_search({1, 1, 0, 1}, {1, 0, 1, 1}, 10);
    CHECK(ref.second == lib.identity_word.has_value());
}

TEST_CASE("Stallings folding") {
    const std::vector<int> A{0}, B{2}, AB{0, 2};
    auto ab = stallings_free_basis({A, B, AB});
    CHECK(ab.rank == 2);
    CHECK_FALSE(ab.free_basis);
    // even-length words: index 2, rank 1 + 2 (2 - 1) = 3
    auto even = stallings_free_basis({{0, 0}, {2, 2}, {0, 2}});
    CHECK(even.rank == 3);
    CHECK(even.free_basis);
    auto lift = stallings_free_basis(lift_projection_words(6, {}));
    CHECK(lift.rank == 6);
    CHECK(lift.free_basis);
}

TEST_CASE("lifted generators project injectively on words up to length 8") {
    const std::vector<std::vector<cplx>> sample{{1.0, 0.0}, {0.0, 1.0}};
    const GeneratorSet lifted = lift_discrete_dense(sanov_pair(), sample, {});
    REQUIRE(lifted.matrices.size() == 4);
    const auto rep = projection_injectivity(lifted, 8);
    CHECK(rep.injective());
    CHECK(rep.words == oracle::reduced_word_count(4, 8));
}

TEST_CASE("lift into SL2 x| C^2 passes density") {
    const GeneratorSet lifted = lift_discrete_dense(sanov_pair(), kGaussianSample, {});
    REQUIRE(lifted.matrices.size() == 6);
    const auto dens = density_check(lifted, sl2_on_c2());
    CHECK(dens.torus_ok);
    CHECK(dens.translation_ok);
    CHECK(dens.support_ok);
    CHECK(lifted.matrices[0].translation.empty() == false);
}

TEST_CASE("lift rejects a deficient kernel sample") {
    CHECK_THROWS_AS(lift_discrete_dense(sanov_pair(), {{1.0, 0.0}, {2.0, 0.0}}, {}), SpanDeficient);
    CHECK_THROWS_AS(lift_discrete_dense(sanov_pair(), {{1.0, 0.0, 0.0}}, {}), ShapeMismatch);
}

TEST_CASE("an irrational rotation has a shrinking margin") {
    // diag(e^{i}, e^{-i}): words are its powers, |e^{in} - 1| = 2|sin(n/2)|.
    PrecisionScope scope(30);
    GeneratorSet g;
    g.kind = GeneratorSet::Kind::Matrix2x2;
    MatrixElement r;
    r.name = "r";
    r.m = {BigComplex(cos(Real(1)), sin(Real(1))), BigComplex(Real(0)), BigComplex(Real(0)),
           BigComplex(cos(Real(1)), -sin(Real(1)))};
    g.matrices = {r};
    double previous = std::numeric_limits<double>::infinity();
    for (int L : {4, 8, 16, 64, 256, 1024}) {
        double expected = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= L; ++n) expected = std::min(expected, 2 * std::abs(std::sin(n / 2.0)));
        const auto m = discreteness_margin(g, L, 10.0);
        CHECK(m.min_distance == doctest::Approx(expected).epsilon(1e-9));
        CHECK(m.min_distance <= previous);
        previous = m.min_distance;
    }
    CHECK(previous < 0.01);
}

TEST_CASE("margin is antitone in word length and radius") {
    const auto& run = sqrt2_run();
    double prev = std::numeric_limits<double>::infinity();
    for (int L = 1; L <= 5; ++L) {
        const auto m = discreteness_margin(run.full, L, 10.0);
        CHECK(m.min_distance <= prev);
        prev = m.min_distance;
    }
    const auto small = discreteness_margin(run.full, 4, 3.0);
    const auto large = discreteness_margin(run.full, 4, 30.0);
    CHECK(large.min_distance <= small.min_distance);
    CHECK(large.in_ball >= small.in_ball);
    CHECK(prev > 1e-9);
}

TEST_CASE("word cap triggers the explosion guard") {
    CHECK_THROWS_AS(discreteness_margin(sqrt2_run().full, 8, 10.0, 100), ExplosionGuard);
}

TEST_CASE("sqrt 2 construction passes density and its cocompact unit has determinant one") {
    const auto& run = sqrt2_run();
    const auto d = density_check(run.full, run.spec);
    CHECK(d.pass());
    REQUIRE(run.group.cocompact.has_value());
    CHECK(run.group.cocompact->delta_units[0] == ZElem{3, 2});
    CHECK(run.group.cocompact->delta_det_defect[0] < Real("1e-12"));
    REQUIRE(run.cocompact.has_value());
    CHECK(density_check(*run.cocompact, run.spec).pass());
}

TEST_CASE("density fails for a torus generator of finite order") {
    auto gens = sqrt2_run().full;
    for (auto& z : gens.affine[0].diag) z = BigComplex(Real(-1));
    const auto d = density_check(gens, sqrt2_run().spec);
    CHECK_FALSE(d.torus_ok);
    CHECK_FALSE(d.pass());
}

TEST_CASE("density fails when translations stay in one weight line") {
    auto gens = sqrt2_run().full;
    for (auto& a : gens.affine)
        if (a.name.rfind("v", 0) == 0) a.translation[1] = BigComplex(Real(0));
    const auto d = density_check(gens, sqrt2_run().spec);
    CHECK(d.translation_rank < 2);
    CHECK_FALSE(d.pass());
}

TEST_CASE("multiplicative independence") {
    PrecisionScope scope(40);
    CHECK(multiplicative_independence({BigComplex(Real(2)), BigComplex(Real(3))}, 10).independent);
    const auto r = multiplicative_independence({BigComplex(Real(4)), BigComplex(Real("0.5"))}, 10);
    REQUIRE_FALSE(r.independent);
    CHECK(r.relation->exponents == std::vector<long>{1, 2});
}

TEST_CASE("generator sets round-trip through JSON") {
    const auto& run = sqrt2_run();
    const json j = generator_set_to_json(run.full, 40);
    const GeneratorSet back = generator_set_from_json(j);
    CHECK(back.names() == run.full.names());
    CHECK(generator_set_to_json(back, 40) == j);
    const json m = generator_set_to_json(lift_discrete_dense(sanov_pair(), kGaussianSample, {}), 30);
    CHECK(generator_set_to_json(generator_set_from_json(m), 30) == m);
}

TEST_CASE("generator set validation") {
    json bad = generator_set_to_json(sanov_pair(), 20);
    bad["elements"][0]["exact"] = json::array({json::array({2, 0}), json::array({0, 1})});
    CHECK_THROWS(generator_set_from_json(bad));
    json missing = generator_set_to_json(sanov_pair(), 20);
    missing["elements"][0].erase("name");
    CHECK_THROWS_AS(generator_set_from_json(missing), SchemaError);
}

}
