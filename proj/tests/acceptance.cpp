// Acceptance criteria: one line per criterion, nonzero exit if any fails.

#include "zdense/construct.hpp"
#include "zdense/decision.hpp"
#include "zdense/laurent_witt.hpp"
#include "zdense/spec_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

using namespace zdense;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

GroupSpec fixture(const std::string& name) {
    return load_group_spec(std::filesystem::path(ZDENSE_SPECS_DIR) / (name + ".json"));
}

bool cites(const Verdict& v, const std::string& c) {
    return std::find(v.citations.begin(), v.citations.end(), c) != v.citations.end();
}

bool has_line(const std::vector<std::string>& lines, const std::string& s) {
    return std::find(lines.begin(), lines.end(), s) != lines.end();
}

void sec8(Outcome& o) {
    const Verdict v = decide(fixture("sec8"), FieldDesc::real());
    o.require(v.status == Status::NotExists, "NotExists");
    o.require(cites(v, "Prop3"), "cites Prop3");
    o.require(has_line(v.evidence, "G' = span{w,x,z,y}, dim 4"), "G' 4-dimensional");
    o.require(has_line(v.evidence, "G'' = span{z}, dim 1"), "G'' 1-dimensional");
    bool weight2 = false;
    for (const auto& e : v.evidence) weight2 = weight2 || e.find("torus weight 2 != 0") != std::string::npos;
    o.require(weight2, "weight 2 noncentral");
    o.detail << "NotExists [Prop3], G' dim 4, G'' = span{z} with weight 2";
}

void ex5(Outcome& o) {
    const GroupSpec s = fixture("ex5");
    o.require(is_unimodular(s), "unimodular");
    for (bool strict : {false, true}) {
        DecideOptions opts;
        opts.strict_paper = strict;
        const Verdict v = decide(s, FieldDesc::complex(), opts);
        o.require(v.status == Status::NotExists, strict ? "strict NotExists" : "NotExists");
        o.require(cites(v, "Ex5-rule"), "cites Ex5-rule");
    }
    o.detail << "unimodular, NotExists [Ex5-rule] with and without strict mode";
}

void borel(Outcome& o) {
    const Verdict simple = decide(fixture("borel_simple"), FieldDesc::complex());
    o.require(simple.status == Status::NotExists && cites(simple, "Borel-Cor"), "Borel of simple");
    const ConstructionRun run = run_construction(IntPoly::parse("x^3-x-1"));
    o.require(run.group.borel_identification.value_or("") == "Borel group in SL_2(C) x SL_2(C)",
              "Borel identification");
    o.require(run.closure.m == 2, "m = 2");
    o.require(!is_unimodular(run.spec) && run.group.det_abs[0] > 1, "non-unimodular");
    const double det = run.group.det_abs[0].convert_to<double>();
    const double theta = run.emb.roots[0].re.convert_to<double>();
    o.require(std::abs(theta - 1.32471795724) < 1e-9, "real root");
    o.require(std::abs(det - std::sqrt(theta)) < 1e-6, "|det| = theta^(1/2)");
    o.detail << "Borel-Cor; m = " << run.closure.m << ", |det tau(theta)| = " << det
             << ", theta^(1/2) = " << std::sqrt(theta);
}

void padic(Outcome& o) {
    int agree = 0, total = 0;
    for (int split = 0; split <= 3; ++split)
        for (int aniso = 0; aniso <= 1; ++aniso)
            for (int unip = 0; unip <= 3; ++unip) {
                if (split + aniso + unip == 0 || total == 20) continue;
                const bool expected = (split + unip > 0) && split >= std::max(1, unip);
                const Verdict v = decide(make_commutative(split, aniso, unip), FieldDesc::padic(5));
                ++total;
                if ((v.status == Status::Exists) == expected && v.status != Status::Unknown) ++agree;
            }
    o.require(agree == total && total == 20, "20 commutative specs");
    int noncomm = 0;
    for (const char* name : {"heisenberg", "heisenberg_graded", "sec8", "ex5", "metabelian_1_-1"}) {
        const Verdict v = decide(fixture(name), FieldDesc::padic(5));
        if (v.status == Status::NotExists && cites(v, "Prop5")) ++noncomm;
    }
    o.require(noncomm == 5, "noncommutative NotExists");
    o.detail << agree << "/" << total << " commutative agree, " << noncomm << "/5 noncommutative NotExists [Prop5]";
}

void sqrt2(Outcome& o) {
    const ConstructionRun run = run_construction(IntPoly::parse("x^2-2"));
    const Integer n = field_norm({1, 1}, run.poly);
    o.require(n == -1, "N(1 + theta) = -1");
    o.require(run.group.cocompact && run.group.cocompact->delta_units[0] == ZElem{3, 2}, "Delta generator 3 + 2 sqrt 2");
    const double defect = run.group.cocompact ? run.group.cocompact->delta_det_defect[0].convert_to<double>() : 1.0;
    o.require(defect < 1e-12, "|det - 1| < 1e-12");
    const DensityReport d = density_check(run.full, run.spec);
    o.require(d.torus_ok && d.translation_ok && d.support_ok, "density");
    const MarginReport m = discreteness_margin(run.full, 6, 10.0, kDefaultWordCap);
    o.require(m.min_distance > 1e-9, "margin > 1e-9");
    o.detail << "N(1+theta) = " << n << ", |det - 1| = " << defect << ", density pass, margin(L=6,R=10) = "
             << m.min_distance << " over " << m.element_count << " elements";
}

void pingpong_lift(Outcome& o) {
    const IntMat2 a{1, 2, 0, 1}, b{1, 0, 2, 1};
    const auto cert = pingpong_certificate(a, b);
    o.require(cert.certified, "ping-pong");
    const auto ws = exact_identity_word_search(a, b, 12);
    o.require(!ws.identity_word && !ws.overflow, "no identity word to length 12");
    GeneratorSet pair;
    pair.kind = GeneratorSet::Kind::Matrix2x2;
    pair.matrices = {make_int_matrix("A", a), make_int_matrix("B", b)};
    const std::vector<std::vector<cplx>> sample{{1.0, 0.0}, {0.0, 1.0}, {cplx(0, 1), 0.0}, {0.0, cplx(0, 1)}};
    const GeneratorSet lifted = lift_discrete_dense(pair, sample, {});
    const auto inj = projection_injectivity(lifted, 8);
    o.require(inj.injective(), "projection injective to length 8");
    LeviData levi;
    levi.radical.unipotent = UnipotentPart(2);
    levi.radical.action.weights = {{}, {}};
    levi.is_semidirect_over_k = true;
    const DensityReport d = density_check(lifted, GroupSpec{levi, "sl2_c2"});
    o.require(d.pass(), "density of the lift");
    o.detail << "certified (" << cert.reason << "), " << ws.words_checked << " words without identity, "
             << lifted.matrices.size() << " lifted generators injective on " << inj.words << " words, density pass";
}

void witt(Outcome& o) {
    for (std::uint64_t p : {2, 3, 5}) {
        const WittLawReport r = witt_law_check(p, 10000, 0);
        o.require(r.ok(), "laws p = " + std::to_string(p));
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) o.require(witt_carry_integrality(p).integral, "integrality p = " + std::to_string(p));
    o.detail << "10^4 triples for p in {2,3,5}, carry integral for p <= 13";
}

void ex3(Outcome& o) {
    const Ex3Report r = ex3_scan(2, 16);
    o.require(r.negative_coefficients_vanish, "no negative coefficients");
    o.require(r.min_valuation_x >= 0 && r.min_valuation_y >= 0, "valuations >= 0");
    o.detail << "solution space dim " << r.solution_dim << ", min valuations (" << r.min_valuation_x << ", "
             << r.min_valuation_y << ")";
}

void ex1(Outcome& o) {
    for (std::uint64_t p : {2, 3}) {
        const Ex1Report r = ex1_frobenius_coset_scan(p, static_cast<long>(3 * p + 2));
        o.require(r.all_distinct() && r.pairs_checked > 0, "distinct cosets p = " + std::to_string(p));
        o.detail << "p=" << p << ": " << r.pairs_certified << "/" << r.pairs_checked << " pairs; ";
    }
}

void malcev(Outcome& o) {
    const Verdict h = decide(fixture("heisenberg"), FieldDesc::real());
    o.require(h.status == Status::Exists && cites(h, "Malcev"), "Heisenberg Exists");
    using R = Rational;
    const int n = 2;
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
    o.require(decide_unipotent_complex(UnipotentPart(2 * n), lattice, n).status == Status::Exists, "Z[i]^n");
    o.require(decide_unipotent_complex(UnipotentPart(n), real_axis, n).status == Status::Exists, "R^n");
    o.require(decide_unipotent_complex(UnipotentPart(n - 1), deficient, n).status == Status::Unknown, "R^(n-1)");
    o.detail << "Heisenberg Exists [Malcev]; complex spans Exists/Exists/Unknown";
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {"5x5 counterexample", 1, sec8},
        {"weights (2,-1,-1)", 1, ex5},
        {"Borel rules", 5, borel},
        {"p-adic classification", 1, padic},
        {"Q(sqrt 2) construction", 60, sqrt2},
        {"ping-pong and lift", 120, pingpong_lift},
        {"Witt laws", 30, witt},
        {"x^p - x = t y^p truncation", 30, ex3},
        {"Frobenius coset truncation", 30, ex1},
        {"Malcev and complex unipotent", 1, malcev},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > criteria[i].limit_s) {
            o.pass = false;
            o.detail << " [over time limit " << criteria[i].limit_s << " s]";
        }
        if (!o.pass) ++failures;
        std::printf("%s  %2zu  %-30s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
