#include "zdense/decision.hpp"
#include "zdense/errors.hpp"
#include "zdense/spec_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>

using namespace zdense;

namespace {

GroupSpec fixture(const std::string& name) {
    return load_group_spec(std::filesystem::path(ZDENSE_SPECS_DIR) / (name + ".json"));
}

bool cites(const Verdict& v, const std::string& c) {
    return std::find(v.citations.begin(), v.citations.end(), c) != v.citations.end();
}

const std::vector<FieldDesc>& all_fields() {
    static const std::vector<FieldDesc> f{FieldDesc::real(), FieldDesc::complex(), FieldDesc::padic(5),
                                          FieldDesc::padic(2), FieldDesc::laurent(2), FieldDesc::laurent(3, 2)};
    return f;
}

DecideOptions no_witness() {
    DecideOptions o;
    o.build_witness = false;
    return o;
}

/// Exists iff the group is not compact and the split rank covers the vector part.
bool padic_commutative_oracle(int split, int aniso, int unip) {
    (void)aniso;
    const bool noncompact = split + unip > 0;
    return noncompact && split >= std::max(1, unip);
}

void check_verdict_invariants(const Verdict& v) {
    if (v.status != Status::Unknown) CHECK_FALSE(v.citations.empty());
    if (v.status == Status::Unknown) {
        const bool passed = std::any_of(v.conditions.begin(), v.conditions.end(), [](const Condition& c) { return c.pass; });
        const bool documented = !v.notes.empty() || !v.evidence.empty();
        CHECK((passed || documented));
    }
    if (v.status == Status::Exists) CHECK((v.witness.has_value() || v.non_constructive || v.witness_recipe.has_value()));
}

}  // namespace

TEST_SUITE("decision") {

TEST_CASE("the 5x5 counterexample is obstructed") {
    const Verdict v = decide(fixture("sec8"), FieldDesc::real());
    CHECK(v.status == Status::NotExists);
    CHECK(v.citations == std::vector<std::string>{"Prop3"});
    const auto has = [&](const std::string& s) {
        return std::find(v.evidence.begin(), v.evidence.end(), s) != v.evidence.end();
    };
    CHECK(has("G' = span{w,x,z,y}, dim 4"));
    CHECK(has("G'' = span{z}, dim 1"));
    const auto ob = obstruction_one_dim_noncentral(fixture("sec8"));
    REQUIRE(ob.has_value());
    CHECK(ob->handle.dim == 1);
    CHECK(ob->citation == "Prop3");
}

TEST_CASE("one-dimensional noncentral obstruction") {
    CHECK_FALSE(obstruction_one_dim_noncentral(make_commutative(1, 0, 3)).has_value());
    CHECK_FALSE(obstruction_one_dim_noncentral(make_heisenberg(std::nullopt)).has_value());
    CHECK_FALSE(obstruction_one_dim_noncentral(make_heisenberg(std::vector<long>{1, -1, 0})).has_value());
    CHECK(obstruction_one_dim_noncentral(make_heisenberg(std::vector<long>{1, 1, 2})).has_value());
}

TEST_CASE("weights (2,-1,-1) over C") {
    const GroupSpec s = fixture("ex5");
    CHECK(is_unimodular(s));
    for (bool strict : {false, true}) {
        DecideOptions o;
        o.strict_paper = strict;
        const Verdict v = decide(s, FieldDesc::complex(), o);
        CHECK(v.status == Status::NotExists);
        CHECK(cites(v, "Ex5-rule"));
    }
}

TEST_CASE("the distinct-value rule beyond the worked instance") {
    const GroupSpec s = make_metabelian({3, -1, -1, -1});
    const Verdict loose = decide(s, FieldDesc::complex(), no_witness());
    CHECK(loose.status == Status::NotExists);
    CHECK(cites(loose, "Ex5-rule (extension)"));
    DecideOptions strict = no_witness();
    strict.strict_paper = true;
    CHECK(decide(s, FieldDesc::complex(), strict).status == Status::Unknown);
}

TEST_CASE("metabelian rule order") {
    const Verdict distinct = decide_metabelian_complex(make_metabelian({3, -1}), no_witness());
    CHECK(distinct.status == Status::NotExists);
    CHECK(cites(distinct, "Prop9"));
    const Verdict quad = decide_metabelian_complex(make_metabelian({1, -1}));
    CHECK(quad.status == Status::Exists);
    CHECK(cites(quad, "§11"));
    REQUIRE(quad.witness.has_value());
    CHECK(decide_metabelian_complex(make_metabelian({3, -1, -2}), no_witness()).status == Status::Unknown);
    CHECK_THROWS_AS(decide_metabelian_complex(make_heisenberg(std::vector<long>{1, -1, 0})), WrongVariant);
}

TEST_CASE("negating weights leaves metabelian verdicts unchanged") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> w(-4, 4);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        std::vector<long> ws, neg;
        for (std::size_t i = 0; i < n; ++i) {
            long x = 0;
            while (x == 0) x = w(rng);
            ws.push_back(x);
            neg.push_back(-x);
        }
        for (bool strict : {false, true}) {
            DecideOptions o = no_witness();
            o.strict_paper = strict;
            const Verdict a = decide_metabelian_complex(make_metabelian(ws), o);
            const Verdict b = decide_metabelian_complex(make_metabelian(neg), o);
            CHECK(a.status == b.status);
            CHECK(a.citations == b.citations);
        }
    }
}

TEST_CASE("Borel subgroups") {
    const Verdict simple = decide(fixture("borel_simple"), FieldDesc::complex());
    CHECK(simple.status == Status::NotExists);
    CHECK(cites(simple, "Borel-Cor"));
    const Verdict product = decide(fixture("borel_sl2xsl2"), FieldDesc::complex());
    CHECK(product.status == Status::Exists);
    CHECK(cites(product, "§11"));
    REQUIRE(product.witness.has_value());
    CHECK(decide(fixture("borel_sl2xsl2"), FieldDesc::real(), no_witness()).status == Status::NotExists);
}

TEST_CASE("nonsolvable groups in characteristic zero") {
    for (const auto& f : {FieldDesc::real(), FieldDesc::complex(), FieldDesc::padic(3)}) {
        const Verdict iso = decide(fixture("sl2_isotropic"), f);
        CHECK(iso.status == Status::Exists);
        CHECK(cites(iso, "ThmA"));
        CHECK(iso.non_constructive);
        CHECK(decide(fixture("so3_anisotropic"), f).status == Status::NotExists);
        CHECK(decide(fixture("levi_sl2_c2"), f).status == Status::Exists);
    }
    LeviData compact_levi;
    compact_levi.semisimple = SemisimpleData{false, true};
    compact_levi.radical.unipotent = UnipotentPart(2);
    compact_levi.radical.action.weights = {{}, {}};
    const Verdict v = decide(GroupSpec{compact_levi, "compact Levi"}, FieldDesc::real());
    CHECK(v.status == Status::NotExists);
    CHECK(cites(v, "Cor§5"));
    CHECK_THROWS_AS(decide_nonsolvable_char0(make_heisenberg(std::nullopt), FieldDesc::real()), WrongVariant);
}

TEST_CASE("amenability") {
    CHECK(is_amenable(make_heisenberg(std::nullopt), FieldDesc::padic(5)) == Tri::True);
    CHECK(is_amenable(make_semisimple(true, false), FieldDesc::real()) == Tri::False);
    CHECK(is_amenable(make_semisimple(false, true), FieldDesc::real()) == Tri::True);
    CHECK(is_amenable(make_semisimple(true, false), FieldDesc::laurent(2)) == Tri::Unknown);
    CHECK(is_amenable(make_commutative(1, 0, 1), FieldDesc::laurent(2)) == Tri::True);
}

TEST_CASE("commutative p-adic classification matches the dimension rule") {
    int checked = 0;
    for (int split = 0; split <= 3; ++split)
        for (int aniso = 0; aniso <= 1; ++aniso)
            for (int unip = 0; unip <= 3; ++unip) {
                if (split + aniso + unip == 0) continue;
                CAPTURE(split);
                CAPTURE(aniso);
                CAPTURE(unip);
                const Verdict v = decide(make_commutative(split, aniso, unip), FieldDesc::padic(5));
                CHECK((v.status == Status::Exists) == padic_commutative_oracle(split, aniso, unip));
                CHECK(v.status != Status::Unknown);
                CHECK(cites(v, "Prop8"));
                if (v.status == Status::Exists) CHECK(v.witness_recipe.has_value());
                ++checked;
            }
    CHECK(checked >= 20);
}

TEST_CASE("adding an anisotropic factor never creates existence") {
    for (int split = 0; split <= 3; ++split)
        for (int unip = 0; unip <= 3; ++unip) {
            if (split + unip == 0) continue;
            const Status base = decide(make_commutative(split, 0, unip), FieldDesc::padic(7)).status;
            const Status more = decide(make_commutative(split, 2, unip), FieldDesc::padic(7)).status;
            if (base == Status::NotExists) CHECK(more == Status::NotExists);
        }
}

TEST_CASE("noncommutative solvable p-adic groups") {
    for (const char* name : {"heisenberg", "sec8", "ex5", "heisenberg_graded"}) {
        const Verdict v = decide(fixture(name), FieldDesc::padic(5));
        CHECK(v.status == Status::NotExists);
        CHECK(cites(v, "Prop5"));
    }
}

TEST_CASE("real unipotent groups") {
    const Verdict h = decide(fixture("heisenberg"), FieldDesc::real());
    CHECK(h.status == Status::Exists);
    CHECK(cites(h, "Malcev"));
    CHECK(decide(make_commutative(0, 0, 3), FieldDesc::real()).status == Status::Exists);
    GroupSpec not_q = make_heisenberg(std::nullopt);
    std::get<SolvableData>(not_q.variant).unipotent.set_over_Q(false);
    CHECK(decide_unipotent_real(not_q).status == Status::Unknown);
}

TEST_CASE("complex unipotent spans") {
    using R = Rational;
    const int n = 3;
    UnipotentPart abelian(n);
    std::vector<GaussianRationalVector> lattice, real_axis, deficient;
    for (int i = 0; i < n; ++i) {
        GaussianRationalVector e(n, {R(0), R(0)}), ie(n, {R(0), R(0)});
        e[static_cast<std::size_t>(i)] = {R(1), R(0)};
        ie[static_cast<std::size_t>(i)] = {R(0), R(1)};
        lattice.push_back(e);
        lattice.push_back(ie);
        real_axis.push_back(e);
        if (i < n - 1) deficient.push_back(e);
    }
    CHECK(decide_unipotent_complex(UnipotentPart(2 * n), lattice, n).status == Status::Exists);
    CHECK(decide_unipotent_complex(abelian, real_axis, n).status == Status::Exists);
    CHECK(decide_unipotent_complex(UnipotentPart(n - 1), deficient, n).status == Status::Unknown);
    CHECK_THROWS_AS(decide_unipotent_complex(abelian, deficient, n), ShapeMismatch);
}

TEST_CASE("real solvable necessary conditions") {
    const Verdict nonuni = necessary_real_solvable(make_metabelian({1, 1}));
    CHECK(nonuni.status == Status::NotExists);
    CHECK(cites(nonuni, "Prop7(ii)"));
    GroupSpec not_q = make_heisenberg(std::vector<long>{1, -1, 0});
    std::get<SolvableData>(not_q.variant).commutator_over_Q = false;
    CHECK(cites(necessary_real_solvable(not_q), "Prop7(i)"));
    const Verdict open = necessary_real_solvable(make_metabelian({1, -1}));
    CHECK(open.status == Status::Unknown);
}

TEST_CASE("positive characteristic is left open") {
    for (const char* name : {"sec8", "heisenberg", "sl2_isotropic", "borel_simple", "commutative_vector"}) {
        const Verdict v = decide(fixture(name), FieldDesc::laurent(2));
        CHECK(v.status == Status::Unknown);
        CHECK(cites(v, "char>0 partial results"));
    }
}

TEST_CASE("decide is total on every fixture and field") {
    for (const auto& entry : std::filesystem::directory_iterator(ZDENSE_SPECS_DIR)) {
        const GroupSpec spec = load_group_spec(entry.path());
        for (const auto& f : all_fields()) {
            CAPTURE(entry.path().string());
            CAPTURE(f.name());
            Verdict v;
            CHECK_NOTHROW(v = decide(spec, f, no_witness()));
            check_verdict_invariants(v);
        }
    }
}

TEST_CASE("constructive Exists verdicts carry checked witnesses") {
    for (const char* name : {"metabelian_1_-1", "totally_real_cubic", "borel_sl2xsl2"}) {
        CAPTURE(name);
        const Verdict v = decide(fixture(name), FieldDesc::complex());
        REQUIRE(v.status == Status::Exists);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness_source.has_value());
        const auto margin = discreteness_margin(*v.witness, 3, 10.0);
        CHECK(margin.min_distance > 1e-9);
    }
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(decide(make_solvable(1, 0, UnipotentPart(2), {{1}}), FieldDesc::real()), InvalidSpec);
}

TEST_CASE("verdicts serialize with their citations") {
    const json j = verdict_to_json(decide(fixture("sec8"), FieldDesc::real()));
    CHECK(j["status"] == "NotExists");
    CHECK(j["citations"][0] == "Prop3");
    CHECK(j["conditions"].size() >= 3);
}

}
