#include "zdense/construct.hpp"

#include "zdense/errors.hpp"
#include "zdense/linalg.hpp"

namespace zdense {

namespace {

std::vector<BigComplex> ones(std::size_t n) { return std::vector<BigComplex>(n, BigComplex(Real(1))); }
std::vector<BigComplex> zeros(std::size_t n) { return std::vector<BigComplex>(n, BigComplex(Real(0))); }

bool same_row_space(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& r : a)
        if (!in_row_space(b, r)) return false;
    for (const auto& r : b)
        if (!in_row_space(a, r)) return false;
    return true;
}

}  // namespace

ConstructionRun run_construction(const IntPoly& f, const ConstructOptions& opts) {
    if (f.degree() < 2 || !f.is_monic()) throw ParseError("need a monic polynomial of degree >= 2");
    const auto irreducible = is_irreducible(f, opts.trusted_irreducible);
    if (!irreducible.has_value()) {
        throw NotIrreducible("irreducibility of " + f.str() + " is not checked above degree 4");
    }
    if (!*irreducible) throw NotIrreducible(f.str() + " is reducible over Q");

    ConstructionRun run;
    run.poly = f;
    run.emb = compute_embeddings(f, opts.digits);
    PrecisionScope scope(run.emb.working_digits);
    run.monogenic = monogenic_certificate(f);
    if (!run.monogenic.certified && !opts.assume_monogenic) {
        throw NotMonogenic(run.monogenic.reason);
    }
    if (run.emb.sig.unit_rank() == 0) {
        throw RankDeficient("unit rank 0: the unit group is finite");
    }
    run.units = find_fundamental_units(f, opts.coeff_bound, opts.supplied_units);
    run.closure = torus_closure_dim(run.units, run.emb, opts.exponent_bound);
    run.group = build_construction(f, run.units, run.emb);

    const std::size_t n = static_cast<std::size_t>(run.emb.sig.r1 + run.emb.sig.r2);
    run.full = make_affine_set(static_cast<int>(n));
    for (std::size_t j = 0; j < run.group.torus_gens.size(); ++j) {
        run.full.affine.push_back({"u" + std::to_string(j + 1), run.group.torus_gens[j], zeros(n)});
    }
    for (std::size_t j = 0; j < run.group.lattice_gens.size(); ++j) {
        run.full.affine.push_back({"v" + std::to_string(j), ones(n), run.group.lattice_gens[j]});
    }
    if (run.group.cocompact) {
        GeneratorSet cc = make_affine_set(static_cast<int>(n));
        const auto& c = *run.group.cocompact;
        for (std::size_t j = 0; j < c.delta_gens.size(); ++j) {
            cc.affine.push_back({"d" + std::to_string(j + 1), c.delta_gens[j], zeros(n)});
        }
        for (std::size_t j = 0; j < c.lattice_gens.size(); ++j) {
            cc.affine.push_back({"w" + std::to_string(j), ones(n), c.lattice_gens[j]});
        }
        run.cocompact = std::move(cc);
    }
    GroupSpec spec = make_solvable(run.closure.m, 0, UnipotentPart(static_cast<int>(n)),
                                   run.closure.weights);
    spec.name = "construction " + f.str();
    run.spec = std::move(spec);
    return run;
}

std::optional<IntPoly> match_construction_pattern(const GroupSpec& spec) {
    const SolvableData* s = spec.solvable_part();
    if (s == nullptr || !spec.is_solvable_variant()) return std::nullopt;
    if (!s->unipotent.is_abelian() || s->torus.split_rank < 1) return std::nullopt;
    const int n = s->unipotent.dim();
    const int k = s->torus.split_rank;
    Matrix<Rational> w(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(k)));
    for (int i = 0; i < n; ++i) {
        bool nonzero = false;
        for (int j = 0; j < k; ++j) {
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                s->action.weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            nonzero = nonzero || s->action.weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
        }
        if (!nonzero) return std::nullopt;
    }
    const Matrix<Rational> kernel = left_kernel(w);
    auto all_ones = [](int len) {
        return Matrix<Rational>{std::vector<Rational>(static_cast<std::size_t>(len), Rational(1))};
    };
    if (n == 2 && same_row_space(kernel, all_ones(2))) return IntPoly::parse("x^2-2");
    if (n == 2 && kernel.empty()) return IntPoly::parse("x^3-x-1");
    if (n == 3 && same_row_space(kernel, all_ones(3))) return IntPoly::parse("x^3-3*x+1");
    return std::nullopt;
}

}  // namespace zdense
