#include "oracles.hpp"

#include "zdense/errors.hpp"
#include "zdense/group_spec.hpp"
#include "zdense/spec_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <map>

using namespace zdense;

namespace {

/// Strictly upper triangular n x n matrices on the basis E_ij (i < j).
struct UpperTriangular {
    int n;
    std::vector<std::pair<int, int>> basis;
    std::map<std::pair<int, int>, int> index;

    explicit UpperTriangular(int size) : n(size) {
        for (int d = 1; d < n; ++d)
            for (int i = 0; i + d < n; ++i) {
                index[{i, i + d}] = static_cast<int>(basis.size());
                basis.emplace_back(i, i + d);
            }
    }

    /// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj as a dense table.
    [[nodiscard]] std::vector<std::vector<std::vector<long long>>> table() const {
        const std::size_t d = basis.size();
        std::vector<std::vector<std::vector<long long>>> c(d, std::vector<std::vector<long long>>(d, std::vector<long long>(d, 0)));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                auto [i, j] = basis[a];
                auto [k, l] = basis[b];
                if (j == k) c[a][b][static_cast<std::size_t>(index.at({i, l}))] += 1;
                if (l == i) c[a][b][static_cast<std::size_t>(index.at({k, j}))] -= 1;
            }
        return c;
    }
};

bool jacobi_holds(const std::vector<std::vector<std::vector<long long>>>& c) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t m = 0; m < n; ++m) {
                    long long s = 0;
                    for (std::size_t k = 0; k < n; ++k)
                        s += c[i][j][k] * c[k][l][m] + c[j][l][k] * c[k][i][m] + c[l][i][k] * c[k][j][m];
                    if (s != 0) return false;
                }
    return true;
}

UnipotentPart from_table(const std::vector<std::vector<std::vector<long long>>>& c) {
    UnipotentPart u(static_cast<int>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            for (std::size_t k = 0; k < c.size(); ++k)
                if (c[i][j][k] != 0) u.set_bracket(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), Rational(c[i][j][k]));
    return u;
}

/// dim of span{[e_i, e_j]} + span{e_k : weight_k != 0} computed on plain integers.
std::size_t commutator_span_dim(const GroupSpec& spec) {
    const auto& s = *spec.solvable_part();
    const int n = s.unipotent.dim();
    std::vector<std::vector<long long>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<long long> r(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] = s.unipotent.bracket(i, j, k).convert_to<long long>();
            rows.push_back(r);
        }
    for (int k = 0; k < n; ++k) {
        bool moves = false;
        for (long w : s.action.weights[static_cast<std::size_t>(k)]) moves = moves || w != 0;
        if (moves) {
            std::vector<long long> r(static_cast<std::size_t>(n), 0);
            r[static_cast<std::size_t>(k)] = 1;
            rows.push_back(r);
        }
    }
    return oracle::bareiss_rank(rows);
}

std::vector<std::filesystem::path> fixtures() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(ZDENSE_SPECS_DIR))
        if (e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("group_spec") {

TEST_CASE("field descriptors") {
    CHECK(FieldDesc::parse("R") == FieldDesc::real());
    CHECK(FieldDesc::parse("Qp:5") == FieldDesc::padic(5));
    CHECK(FieldDesc::parse("Q_7").prime() == 7);
    CHECK(FieldDesc::parse("Laurent:2:3").characteristic() == 2);
    CHECK(FieldDesc::parse("Laurent:2").name() == "F_2((t))");
    CHECK_FALSE(FieldDesc::parse("C").characteristic());
    CHECK_THROWS(FieldDesc::parse("Qp:6"));
    CHECK_THROWS(FieldDesc::parse("Z"));
}

TEST_CASE("upper triangular algebras satisfy Jacobi and validate") {
    for (int n : {3, 4, 5}) {
        UpperTriangular ut(n);
        const auto c = ut.table();
        REQUIRE(jacobi_holds(c));
        const int d = static_cast<int>(c.size());
        GroupSpec spec = make_solvable(0, 0, from_table(c), std::vector<std::vector<long>>(static_cast<std::size_t>(d)));
        CHECK(validate_spec(spec).ok());
    }
}

TEST_CASE("a broken structure constant is reported as a Jacobi violation") {
    UpperTriangular ut(4);
    auto c = ut.table();
    // [E12, E23] = E13 rescaled by 2 breaks Jacobi against E34.
    const auto a = static_cast<std::size_t>(ut.index.at({0, 1})), b = static_cast<std::size_t>(ut.index.at({1, 2}));
    const auto k = static_cast<std::size_t>(ut.index.at({0, 2}));
    c[a][b][k] = 2;
    c[b][a][k] = -2;
    REQUIRE_FALSE(jacobi_holds(c));
    GroupSpec spec = make_solvable(0, 0, from_table(c), std::vector<std::vector<long>>(c.size()));
    const auto report = validate_spec(spec);
    REQUIRE_FALSE(report.ok());
    bool jacobi = false;
    for (const auto& v : report.violations) jacobi = jacobi || v.rfind("jacobi", 0) == 0;
    CHECK(jacobi);
}

TEST_CASE("shape violations") {
    GroupSpec bad = make_solvable(1, 0, UnipotentPart(2), {{1}});
    CHECK_FALSE(validate_spec(bad).ok());
    GroupSpec bad_len = make_solvable(2, 0, UnipotentPart(1), {{1}});
    CHECK_FALSE(validate_spec(bad_len).ok());
    GroupSpec incompatible = make_heisenberg(std::vector<long>{1, 1, 0});
    CHECK_FALSE(validate_spec(incompatible).ok());
    CHECK(validate_spec(make_heisenberg(std::vector<long>{1, 1, 2})).ok());
}

TEST_CASE("derived series of the 5x5 counterexample") {
    const GroupSpec s = make_sec8_spec();
    const auto series = derived_series(s);
    REQUIRE(series.size() == 4);
    CHECK(series[0].dim == 5);
    CHECK(series[1].dim == 4);
    CHECK(series[1].describe(s.solvable_part()->unipotent.labels()) == "span{w,x,z,y}");
    CHECK(series[2].dim == 1);
    CHECK(series[2].describe(s.solvable_part()->unipotent.labels()) == "span{z}");
    CHECK(series[3].kind == SubgroupHandle::Kind::Trivial);
    CHECK(is_unimodular(s));
}

TEST_CASE("first derived subgroup equals the commutator span") {
    std::vector<GroupSpec> specs{make_sec8_spec(), make_heisenberg(std::nullopt),
                                 make_heisenberg(std::vector<long>{1, -1, 0}),
                                 make_heisenberg(std::vector<long>{1, 2, 3}),
                                 make_metabelian({2, -1, -1}), make_metabelian({1, 0}),
                                 make_commutative(1, 1, 2)};
    UpperTriangular ut(4);
    specs.push_back(make_solvable(0, 0, from_table(ut.table()), std::vector<std::vector<long>>(6)));
    for (const auto& spec : specs) {
        const auto series = derived_series(spec);
        REQUIRE(series.size() >= 2);
        CHECK(static_cast<std::size_t>(series[1].dim) == commutator_span_dim(spec));
    }
}

TEST_CASE("derived series of strictly upper triangular 4x4 matrices") {
    UpperTriangular ut(4);
    const auto series = derived_series(make_solvable(0, 0, from_table(ut.table()), std::vector<std::vector<long>>(6)));
    REQUIRE(series.size() == 3);
    CHECK(series[0].dim == 6);
    CHECK(series[1].dim == 3);
    CHECK(series[2].kind == SubgroupHandle::Kind::Trivial);
}

TEST_CASE("C(G) contains the derived series") {
    for (const auto& spec : {make_sec8_spec(), make_heisenberg(std::vector<long>{1, -1, 0})}) {
        const auto closure = cgroups_closure(spec);
        for (const auto& h : derived_series(spec)) CHECK(closure.count(h) == 1);
    }
}

TEST_CASE("unimodularity is the vanishing weight sum") {
    CHECK(is_unimodular(make_metabelian({2, -1, -1})));
    CHECK_FALSE(is_unimodular(make_metabelian({1, 1})));
    CHECK(is_unimodular(make_heisenberg(std::nullopt)));
    CHECK_FALSE(is_unimodular(make_heisenberg(std::vector<long>{1, 2, 3})));
}

TEST_CASE("commutative decomposition dimensions") {
    CHECK(decomposition_dims(make_commutative(2, 1, 3)) == DecompositionDims{2, 1, 3});
    CHECK_THROWS_AS(decomposition_dims(make_heisenberg(std::nullopt)), NotCommutative);
    CHECK_THROWS_AS(decomposition_dims(make_semisimple(true, false)), WrongVariant);
}

TEST_CASE("fixtures load, validate and round-trip") {
    const auto files = fixtures();
    REQUIRE(files.size() >= 10);
    for (const auto& f : files) {
        CAPTURE(f.string());
        const GroupSpec spec = load_group_spec(f);
        CHECK(validate_spec(spec).ok());
        const json j = group_spec_to_json(spec);
        CHECK(group_spec_to_json(group_spec_from_json(j)) == j);
    }
}

TEST_CASE("schema rejections") {
    CHECK_THROWS_AS(group_spec_from_json(json::parse(R"({"name": "x"})")), SchemaError);
    CHECK_THROWS_AS(group_spec_from_json(json::parse(R"({"variant": "Nilpotent"})")), SchemaError);
    CHECK_THROWS_AS(group_spec_from_json(json::parse(R"({"variant": "Solvable", "colour": 1})")), SchemaError);
    CHECK_THROWS_AS(group_spec_from_json(json::parse(
                        R"({"variant": "Solvable", "unipotent": {"dim": 3, "brackets": [[1, 2, 3, "1.5"]]}})")),
                    SchemaError);
    CHECK_THROWS_AS(group_spec_from_json(json::parse(R"({"variant": "Solvable", "torus": {"split_rank": -1, "anisotropic_rank": 0}})")),
                    SchemaError);
    const auto v = schema_violations(group_spec_schema(), json::parse(R"({"variant": 3, "extra": true})"));
    CHECK(v.size() >= 2);
}

}
