#include "zdense/decision.hpp"

#include "zdense/construct.hpp"
#include "zdense/errors.hpp"
#include "zdense/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace zdense {

namespace {

constexpr const char* kBasisGradedNote =
    "commutator subgroups are computed in the basis-graded model (spans of basis vectors)";

std::string weight_string(const std::vector<long>& w) {
    if (w.size() == 1) return std::to_string(w[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

std::string series_string(const std::vector<SubgroupHandle>& series, const SolvableData& s) {
    std::string out;
    for (const auto& h : series) {
        if (!out.empty()) out += " > ";
        out += h.describe(s.unipotent.labels()) + " (dim " +
               std::to_string(h.kind == SubgroupHandle::Kind::Whole
                                  ? s.unipotent.dim() + s.torus.split_rank + s.torus.anisotropic_rank
                                  : h.dim) +
               ")";
    }
    return out;
}

void add_derived_series_evidence(const GroupSpec& spec, Verdict& v) {
    const SolvableData& s = spec.require_solvable_part();
    try {
        const auto series = derived_series(spec);
        v.evidence.push_back("derived series: " + series_string(series, s));
        for (std::size_t i = 1; i < series.size() && i <= 2; ++i) {
            v.evidence.push_back(std::string(i == 1 ? "G'" : "G''") + " = " +
                                 series[i].describe(s.unipotent.labels()) + ", dim " +
                                 std::to_string(series[i].dim));
        }
        v.notes.push_back(kBasisGradedNote);
    } catch (const NotBasisGraded& e) {
        v.notes.push_back(std::string("derived series unavailable: ") + e.what());
    }
}

bool has_trivial_radical(const SolvableData& r) {
    return r.unipotent.dim() == 0 && r.torus.split_rank == 0 && r.torus.anisotropic_rank == 0;
}

Verdict char_p_verdict(const GroupSpec& spec, const FieldDesc& field) {
    Verdict v;
    v.status = Status::Unknown;
    v.cite("char>0 partial results");
    v.check("well-formed spec", true);
    const Tri amen = is_amenable(spec, field);
    v.check("amenable", amen == Tri::True, tri_name(amen));
    v.notes.push_back("positive characteristic (" + field.name() +
                      "): no general rule; the gallery examples ex1, ex3, ex4 are checked separately");
    return v;
}

/// Runs the construction for a matched pattern and checks the witness against
/// the group spec before any Exists claim is made.
bool attach_witness(const IntPoly& f, const GroupSpec* check_spec, const DecideOptions& opts, Verdict& v) {
    if (!opts.build_witness) {
        v.notes.push_back("witness not built (disabled); construction pattern " + f.str());
        v.witness_source = "construction " + f.str();
        v.witness_recipe = "zdense construct --poly \"" + f.str() + "\" then zdense verify on the result";
        return true;
    }
    ConstructOptions co;
    co.exponent_bound = opts.exponent_bound;
    const ConstructionRun run = run_construction(f, co);
    const GroupSpec& spec = check_spec != nullptr ? *check_spec : run.spec;
    const DensityReport dens = density_check(run.full, spec, opts.exponent_bound);
    const MarginReport margin = discreteness_margin(run.full, 4, 10.0);
    v.check("witness density evidence", dens.pass(),
            "torus " + std::string(dens.torus_ok ? "ok" : "fails") + ", translations " +
                (dens.translation_ok ? "ok" : "fail") + ", support " + (dens.support_ok ? "ok" : "fails"));
    std::ostringstream md;
    md << "min distance " << margin.min_distance << " over words of length <= 4 in radius 10";
    v.check("witness discreteness margin", margin.min_distance > 1e-9, md.str());
    if (!dens.pass() || !(margin.min_distance > 1e-9)) return false;
    v.witness = run.full;
    v.witness_source = "construction " + f.str();
    if (run.group.borel_identification) v.evidence.push_back(*run.group.borel_identification);
    v.evidence.push_back("torus closure dimension m = " + std::to_string(run.closure.m) + " (" +
                         run.closure.flag + ")");
    return true;
}

Verdict decide_borel(const BorelData& b, const GroupSpec& spec, const FieldDesc& field,
                     const DecideOptions& opts) {
    Verdict v;
    if (b.ambient == BorelData::Ambient::Simple) {
        v.status = Status::NotExists;
        v.cite("Borel-Cor");
        v.check("Borel subgroup of a simple group", true);
        return v;
    }
    v.check("Borel subgroup of a product of " + std::to_string(b.count) + " simple groups", true);
    if (field.kind() == FieldKind::ArchReal) {
        v.status = Status::NotExists;
        v.cite("Prop7(ii)");
        v.check("unimodular", false, "the modular character of a Borel group is nontrivial");
        return v;
    }
    if (field.kind() == FieldKind::PAdic) {
        v.status = Status::NotExists;
        v.cite("Prop5");
        v.check("commutative", false);
        return v;
    }
    if (b.sl2_factors && b.count == 2) {
        // (C^*)^2 x| C^2 with weights (2,0), (0,2).
        UnipotentPart u(2);
        GroupSpec metab = make_solvable(2, 0, u, {{2, 0}, {0, 2}});
        if (attach_witness(IntPoly::parse("x^3-x-1"), &metab, opts, v)) {
            v.status = Status::Exists;
            v.cite("§11");
            v.notes.push_back("identified with the T x| C^2 spec with weights (2,0), (0,2)");
            return v;
        }
    }
    (void)spec;
    v.status = Status::Unknown;
    v.notes.push_back("no construction pattern for this product of simple groups");
    return v;
}

Verdict decide_complex_solvable(const GroupSpec& spec, const DecideOptions& opts) {
    const SolvableData& s = spec.require_solvable_part();
    if (s.torus.split_rank == 0 && s.torus.anisotropic_rank == 0) {
        Verdict v;
        v.check("nilpotent", true);
        v.check("defined over Q", s.unipotent.over_Q());
        if (s.unipotent.over_Q()) {
            v.status = Status::Exists;
            v.cite("Malcev");
            v.non_constructive = true;
            v.notes.push_back("the Q-form is a real subgroup with rational structure constants spanning Lie(G)");
        } else {
            v.status = Status::Unknown;
            v.notes.push_back("rational structure constants, but the group is not flagged as defined over Q");
        }
        return v;
    }
    bool metabelian = s.unipotent.is_abelian() && s.torus.split_rank >= 1;
    for (const auto& row : s.action.weights) {
        metabelian = metabelian && std::any_of(row.begin(), row.end(), [](long x) { return x != 0; });
    }
    if (metabelian) return decide_metabelian_complex(spec, opts);
    Verdict v;
    v.check("unimodular", is_unimodular(spec));
    add_derived_series_evidence(spec, v);
    try {
        if (auto ob = obstruction_one_dim_noncentral(spec)) {
            v.status = Status::NotExists;
            v.cite(ob->citation);
            v.check("no one-dimensional noncentral member of C(G)", false, ob->description);
            v.evidence.push_back(ob->description);
            return v;
        }
        v.check("no one-dimensional noncentral member of C(G)", true);
    } catch (const NotBasisGraded& e) {
        v.notes.push_back(std::string("obstruction scan skipped: ") + e.what());
    }
    if (auto f = match_construction_pattern(spec)) {
        if (attach_witness(*f, &spec, opts, v)) {
            v.status = Status::Exists;
            v.cite("§11");
            return v;
        }
    }
    v.status = Status::Unknown;
    v.notes.push_back("no sufficient rule applies to this complex solvable spec");
    return v;
}

}  // namespace

std::string status_name(Status s) {
    switch (s) {
        case Status::Exists: return "Exists";
        case Status::NotExists: return "NotExists";
        case Status::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string tri_name(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

void Verdict::cite(const std::string& c) {
    if (std::find(citations.begin(), citations.end(), c) == citations.end()) citations.push_back(c);
}

void Verdict::check(const std::string& name, bool pass, const std::string& detail) {
    conditions.push_back({name, pass, detail});
}

json verdict_to_json(const Verdict& v, unsigned digits) {
    json j;
    j["status"] = status_name(v.status);
    j["citations"] = v.citations;
    j["conditions"] = json::array();
    for (const auto& c : v.conditions) {
        json cj{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        j["conditions"].push_back(std::move(cj));
    }
    j["evidence"] = v.evidence;
    j["notes"] = v.notes;
    j["non_constructive"] = v.non_constructive;
    if (v.witness) j["witness"] = generator_set_to_json(*v.witness, digits);
    if (v.witness_source) j["witness_source"] = *v.witness_source;
    if (v.witness_recipe) j["witness_recipe"] = *v.witness_recipe;
    return j;
}

Tri is_amenable(const GroupSpec& spec, const FieldDesc& field) {
    const bool solvable = std::holds_alternative<SolvableData>(spec.variant) ||
                          std::holds_alternative<BorelData>(spec.variant);
    if (solvable) return Tri::True;
    if (field.characteristic() > 0) return Tri::Unknown;
    if (const auto* ss = std::get_if<SemisimpleData>(&spec.variant)) {
        return ss->isotropic ? Tri::False : Tri::True;
    }
    const auto& levi = std::get<LeviData>(spec.variant);
    return levi.semisimple.isotropic ? Tri::False : Tri::True;
}

Verdict decide(const GroupSpec& spec, const FieldDesc& field, const DecideOptions& opts) {
    const ValidationReport report = validate_spec(spec);
    if (!report.ok()) {
        std::string msg = "invalid spec";
        for (const auto& m : report.violations) msg += "; " + m;
        throw InvalidSpec(msg);
    }
    if (field.characteristic() > 0) return char_p_verdict(spec, field);
    if (std::holds_alternative<SemisimpleData>(spec.variant) ||
        std::holds_alternative<LeviData>(spec.variant)) {
        return decide_nonsolvable_char0(spec, field, opts);
    }
    if (const auto* b = std::get_if<BorelData>(&spec.variant)) return decide_borel(*b, spec, field, opts);
    const SolvableData& s = std::get<SolvableData>(spec.variant);
    switch (field.kind()) {
        case FieldKind::PAdic: return decide_padic_solvable(spec, field);
        case FieldKind::ArchReal:
            if (s.torus.split_rank == 0 && s.torus.anisotropic_rank == 0) return decide_unipotent_real(spec);
            return necessary_real_solvable(spec);
        case FieldKind::ArchComplex: return decide_complex_solvable(spec, opts);
        case FieldKind::LaurentFF: break;
    }
    return char_p_verdict(spec, field);
}

Verdict decide_nonsolvable_char0(const GroupSpec& spec, const FieldDesc& field, const DecideOptions&) {
    if (field.characteristic() != 0) throw WrongVariant("characteristic 0 only");
    const SemisimpleData* ss = nullptr;
    const SolvableData* radical = nullptr;
    if (const auto* p = std::get_if<SemisimpleData>(&spec.variant)) {
        ss = p;
    } else if (const auto* l = std::get_if<LeviData>(&spec.variant)) {
        ss = &l->semisimple;
        radical = &l->radical;
    } else {
        throw WrongVariant("expected a Semisimple or Levi spec, got " + spec.variant_name());
    }
    const bool trivial_radical = radical == nullptr || has_trivial_radical(*radical);
    Verdict v;
    v.check("G/R is k-isotropic", ss->isotropic);
    if (ss->isotropic) {
        v.status = Status::Exists;
        v.cite("Thm1");
        v.cite("ThmA");
        v.non_constructive = true;
        v.notes.push_back(trivial_radical ? "an arithmetic lattice is discrete and Zariski-dense"
                                          : "lift of a free Zariski-dense subgroup of the Levi factor");
        return v;
    }
    v.status = Status::NotExists;
    v.check("G/R(k) is compact", true, "anisotropic semisimple quotient");
    v.cite("Thm1");
    if (!trivial_radical) {
        v.cite("Cor§5");
        v.check("G != R", true);
    } else {
        v.notes.push_back("G(k) is compact, so discrete subgroups are finite");
    }
    return v;
}

Verdict decide_padic_solvable(const GroupSpec& spec, const FieldDesc& field) {
    if (field.kind() != FieldKind::PAdic) throw WrongVariant("p-adic field required");
    if (!spec.is_solvable_variant()) throw WrongVariant("Solvable spec required");
    const SolvableData& s = std::get<SolvableData>(spec.variant);
    Verdict v;
    if (!is_commutative(s)) {
        v.status = Status::NotExists;
        v.cite("Prop5");
        v.check("commutative", false);
        return v;
    }
    v.check("commutative", true);
    const DecompositionDims d = decomposition_dims(spec);
    const bool not_compact = !(d.dim_Gi == 0 && d.dim_Gu == 0);
    const bool enough_split = d.dim_Gi >= std::max(1, d.dim_Gu);
    v.evidence.push_back("(dim G_i, dim G_c, dim G_u) = (" + std::to_string(d.dim_Gi) + "," +
                         std::to_string(d.dim_Gc) + "," + std::to_string(d.dim_Gu) + ")");
    v.check("G != G_c", not_compact);
    v.check("dim G_i >= max(1, dim G_u)", enough_split);
    v.cite("Prop8");
    if (not_compact && enough_split) {
        v.status = Status::Exists;
        const long p = field.prime();
        std::ostringstream r;
        r << "generators g_j (j = 1.." << d.dim_Gi << ") with G_i-coordinate " << p
          << " in slot j and 1 elsewhere";
        if (d.dim_Gu > 0) r << ", G_u-coordinate e_j for j <= " << d.dim_Gu;
        if (d.dim_Gc > 0) r << ", and g_1 carrying an element generating a dense subgroup of G_c";
        r << "; Gamma = {(" << p << "^n_1, ..., " << p << "^n_m)} on G_i";
        v.witness_recipe = r.str();
    } else {
        v.status = Status::NotExists;
    }
    return v;
}

Verdict decide_unipotent_real(const GroupSpec& spec) {
    if (!spec.is_solvable_variant()) throw WrongVariant("Solvable spec required");
    const SolvableData& s = std::get<SolvableData>(spec.variant);
    if (s.torus.split_rank != 0 || s.torus.anisotropic_rank != 0) {
        throw WrongVariant("unipotent spec (torus rank 0) required");
    }
    Verdict v;
    v.check("nilpotent (hence unimodular)", true);
    v.check("defined over Q", s.unipotent.over_Q());
    if (s.unipotent.over_Q()) {
        v.status = Status::Exists;
        v.cite("Malcev");
        v.non_constructive = true;
        v.notes.push_back("every such discrete Zariski-dense subgroup is cocompact");
    } else {
        v.status = Status::Unknown;
        v.notes.push_back("structure constants are rational in this data model; the group is flagged as "
                          "not defined over Q, so no rule is applied");
    }
    return v;
}

Verdict decide_unipotent_complex(const UnipotentPart& real_form,
                                 const std::vector<GaussianRationalVector>& inclusion,
                                 int ambient_dim) {
    if (static_cast<int>(inclusion.size()) != real_form.dim()) {
        throw ShapeMismatch("inclusion needs one image per basis vector of the real form");
    }
    Matrix<Rational> rows;
    for (const auto& vec : inclusion) {
        if (static_cast<int>(vec.size()) != ambient_dim) {
            throw ShapeMismatch("inclusion image has the wrong ambient dimension");
        }
        std::vector<Rational> re_im, i_times;
        for (const auto& [re, im] : vec) re_im.push_back(re);
        for (const auto& [re, im] : vec) re_im.push_back(im);
        for (const auto& [re, im] : vec) i_times.push_back(-im);
        for (const auto& [re, im] : vec) i_times.push_back(re);
        rows.push_back(std::move(re_im));
        rows.push_back(std::move(i_times));
    }
    const std::size_t complex_dim = rows.empty() ? 0 : rank(rows) / 2;
    Verdict v;
    v.check("real form defined over Q", real_form.over_Q());
    v.check("complex span is the whole Lie algebra", static_cast<int>(complex_dim) == ambient_dim,
            "complex span dimension " + std::to_string(complex_dim) + " of " + std::to_string(ambient_dim));
    if (real_form.over_Q() && static_cast<int>(complex_dim) == ambient_dim) {
        v.status = Status::Exists;
        v.cite("Malcev");
        v.non_constructive = true;
    } else {
        v.status = Status::Unknown;
        v.notes.push_back("this real subgroup does not witness density; another one might");
    }
    return v;
}

std::optional<Obstruction> obstruction_one_dim_noncentral(const GroupSpec& spec) {
    const SolvableData& s = spec.require_solvable_part();
    const auto closure = cgroups_closure(spec);
    const int n = s.unipotent.dim();
    for (const auto& h : closure) {
        if (h.kind != SubgroupHandle::Kind::Span || h.dim != 1) continue;
        const int i = h.basis.front();
        const auto& w = s.action.weights[static_cast<std::size_t>(i)];
        const bool weighted = std::any_of(w.begin(), w.end(), [](long x) { return x != 0; });
        std::optional<int> partner;
        for (int j = 0; j < n && !partner; ++j) {
            const auto b = s.unipotent.bracket_vector(i, j);
            if (std::any_of(b.begin(), b.end(), [](const Rational& x) { return x != 0; })) partner = j;
        }
        if (!weighted && !partner) continue;
        Obstruction ob;
        ob.handle = h;
        ob.description = h.describe(s.unipotent.labels()) + " in C(G) is one-dimensional and not central (";
        if (weighted) {
            ob.description += "torus weight " + weight_string(w) + " != 0";
        } else {
            ob.description += "[" + s.unipotent.labels()[static_cast<std::size_t>(i)] + ", " +
                              s.unipotent.labels()[static_cast<std::size_t>(*partner)] + "] != 0";
        }
        ob.description += ")";
        return ob;
    }
    return std::nullopt;
}

Verdict necessary_real_solvable(const GroupSpec& spec) {
    const SolvableData& s = spec.require_solvable_part();
    Verdict v;
    add_derived_series_evidence(spec, v);
    const bool unimodular = is_unimodular(spec);
    v.check("unimodular", unimodular);
    if (!unimodular) {
        v.status = Status::NotExists;
        v.cite("Prop7(ii)");
        return v;
    }
    v.check("commutator group defined over Q", s.commutator_over_Q);
    if (!s.commutator_over_Q) {
        v.status = Status::NotExists;
        v.cite("Prop7(i)");
        return v;
    }
    try {
        if (auto ob = obstruction_one_dim_noncentral(spec)) {
            v.status = Status::NotExists;
            v.cite(ob->citation);
            v.check("no one-dimensional noncentral member of C(G)", false, ob->description);
            v.evidence.push_back(ob->description);
            return v;
        }
        v.check("no one-dimensional noncentral member of C(G)", true);
    } catch (const NotBasisGraded& e) {
        v.notes.push_back(std::string("obstruction scan skipped: ") + e.what());
    }
    v.status = Status::Unknown;
    v.notes.push_back("the necessary conditions hold, but they are not sufficient in general");
    return v;
}

Verdict decide_metabelian_complex(const GroupSpec& spec, const DecideOptions& opts) {
    if (!spec.is_solvable_variant()) throw WrongVariant("Solvable spec required");
    const SolvableData& s = std::get<SolvableData>(spec.variant);
    if (s.torus.split_rank < 1 || !s.unipotent.is_abelian()) {
        throw WrongVariant("metabelian rule needs a split torus acting on a vector group");
    }
    for (const auto& row : s.action.weights) {
        if (std::all_of(row.begin(), row.end(), [](long x) { return x == 0; })) {
            throw WrongVariant("metabelian rule needs nonzero weights");
        }
    }
    Verdict v;
    const bool unimodular = is_unimodular(spec);
    v.check("unimodular", unimodular);
    if (s.torus.split_rank == 1) {
        std::vector<long> w;
        for (const auto& row : s.action.weights) w.push_back(row[0]);
        const std::set<long> distinct(w.begin(), w.end());
        const bool all_distinct = distinct.size() == w.size();
        const long total = std::accumulate(w.begin(), w.end(), 0L);
        const long distinct_total = std::accumulate(distinct.begin(), distinct.end(), 0L);
        v.evidence.push_back("weights " + weight_string(w) + ", sum " + std::to_string(total) +
                             ", sum of distinct values " + std::to_string(distinct_total));
        v.check("weights distinct", all_distinct);
        if (all_distinct && total != 0) {
            v.status = Status::NotExists;
            v.cite("Prop9");
            v.cite("Lemma8");
            return v;
        }
        std::multiset<long> ms(w.begin(), w.end());
        const bool worked = ms == std::multiset<long>{2, -1, -1} || ms == std::multiset<long>{-2, 1, 1};
        if (distinct_total != 0) {
            if (!opts.strict_paper || worked) {
                v.status = Status::NotExists;
                v.check("sum of distinct weight values vanishes", false);
                v.cite(worked ? "Ex5-rule" : "Ex5-rule (extension)");
                v.cite("Lemma8");
                return v;
            }
            v.notes.push_back("strict mode: the distinct-weight-sum rule only applies to (2,-1,-1)");
        } else {
            v.check("sum of distinct weight values vanishes", true);
        }
    }
    try {
        if (auto ob = obstruction_one_dim_noncentral(spec)) {
            v.status = Status::NotExists;
            v.cite(ob->citation);
            v.check("no one-dimensional noncentral member of C(G)", false, ob->description);
            v.evidence.push_back(ob->description);
            return v;
        }
        v.check("no one-dimensional noncentral member of C(G)", true);
    } catch (const NotBasisGraded& e) {
        v.notes.push_back(std::string("obstruction scan skipped: ") + e.what());
    }
    if (auto f = match_construction_pattern(spec)) {
        if (attach_witness(*f, &spec, opts, v)) {
            v.status = Status::Exists;
            v.cite("§11");
            return v;
        }
    }
    v.status = Status::Unknown;
    v.notes.push_back("no constructive pattern matches these weights; unimodularity alone is not sufficient");
    return v;
}

}  // namespace zdense
