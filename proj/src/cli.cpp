#include "zdense/cli.hpp"

#include "zdense/construct.hpp"
#include "zdense/decision.hpp"
#include "zdense/errors.hpp"
#include "zdense/laurent_witt.hpp"
#include "zdense/spec_io.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace zdense::cli {

namespace {

struct Config {
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
    bool strict_paper = false;
    bool assume_monogenic = false;

    // decide
    std::string spec_path;
    std::string field = "R";
    bool no_witness = false;

    // construct
    std::string poly;
    long coeff_bound = 10;
    unsigned precision = 30;
    std::vector<std::string> units;
    std::string gens_path = "gens.json";
    bool trusted_irreducible = false;

    // verify
    std::string gens_input;
    std::string verify_spec;
    std::string set = "full";
    int word_len = 6;
    double ball = 10.0;
    double cap = static_cast<double>(kDefaultWordCap);

    // shared
    long exp_bound = 20;

    // gallery
    std::string example;
    long p = 0;
    long horizon = 0;
    std::size_t samples = 0;
};

json tool_json() { return {{"name", "zdense"}, {"version", ZDENSE_VERSION}}; }

json number_or_inf(double x) {
    if (std::isinf(x)) return "inf";
    return x;
}

std::string real_str(const Real& x, unsigned digits = 20) { return to_decimal(x, digits); }

json zelem_json(const ZElem& e) {
    json a = json::array();
    for (const auto& c : e) a.push_back(c.str());
    return a;
}

json complex_json(const BigComplex& z, unsigned digits) {
    return json::array({to_decimal(z.re, digits), to_decimal(z.im, digits)});
}

json complex_rows(const std::vector<std::vector<BigComplex>>& rows, unsigned digits) {
    json a = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& z : r) row.push_back(complex_json(z, digits));
        a.push_back(std::move(row));
    }
    return a;
}

json margin_json(const MarginReport& m) {
    return {{"word_length", m.word_length},
            {"ball_radius", m.ball_radius},
            {"min_distance", number_or_inf(m.min_distance)},
            {"attained_word", m.attained_word},
            {"element_count", m.element_count},
            {"in_ball", m.in_ball},
            {"cap", m.cap}};
}

json density_json(const DensityReport& d) {
    return {{"torus", d.torus_ok},
            {"translation", d.translation_ok},
            {"full_support", d.support_ok},
            {"pass", d.pass()},
            {"exponent_bound", d.exponent_bound},
            {"translation_rank", d.translation_rank},
            {"notes", d.notes}};
}

json pingpong_json(const PingPongCertificate& c) {
    json regions = json::array();
    for (const auto& r : c.regions) regions.push_back({{"generator", r.generator}, {"region", r.region}});
    return {{"certified", c.certified}, {"reason", c.reason}, {"regions", regions}};
}

json word_search_json(const WordSearchResult& w, int len) {
    json j{{"max_length", len}, {"words_checked", w.words_checked}, {"overflow", w.overflow}};
    j["identity_word"] = w.identity_word ? json(*w.identity_word) : json(nullptr);
    return j;
}

json injectivity_json(const InjectivityReport& r) {
    json j{{"max_length", r.max_len},
           {"words", r.words},
           {"hash_collisions", r.hash_collisions},
           {"injective", r.injective()}};
    if (r.clash) j["clash"] = {r.clash->first, r.clash->second};
    return j;
}

void render_text(const json& j, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar = [](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    auto all_scalar = [](const json& a) {
        for (const auto& v : a)
            if (v.is_structured()) return false;
        return true;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object()) {
                os << pad << k << ":\n";
                render_text(v, os, indent + 2);
            } else if (v.is_array() && !all_scalar(v)) {
                os << pad << k << ":\n";
                for (const auto& e : v) {
                    os << pad << "  -\n";
                    render_text(e, os, indent + 4);
                }
            } else if (v.is_array()) {
                os << pad << k << ": [";
                bool first = true;
                for (const auto& e : v) {
                    os << (first ? "" : ", ") << scalar(e);
                    first = false;
                }
                os << "]\n";
            } else {
                os << pad << k << ": " << scalar(v) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) render_text(e, os, indent);
    } else {
        os << pad << scalar(j) << "\n";
    }
}

void emit(const Config& cfg, const json& report, std::ostream& out) {
    std::ostringstream os;
    if (cfg.format == "text") {
        render_text(report, os, 0);
    } else {
        os << report.dump(2) << "\n";
    }
    if (cfg.out_path.empty()) {
        out << os.str();
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) throw Error("cannot write " + cfg.out_path);
        f << os.str();
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << doc.dump(2) << "\n";
}

json base_report(const std::string& command, const std::string& hash_input, const json& bounds,
                 const Config& cfg) {
    return {{"tool", tool_json()},
            {"command", command},
            {"input_hash", sha256_hex(hash_input)},
            {"bounds", bounds},
            {"seed", cfg.seed}};
}

int exit_for(Status s) {
    switch (s) {
        case Status::Exists: return 0;
        case Status::NotExists: return 1;
        case Status::Unknown: return 2;
    }
    return 2;
}

// ---------------------------------------------------------------------------
// decide
// ---------------------------------------------------------------------------

int cmd_decide(const Config& cfg, std::ostream& out) {
    const std::string text = read_file(cfg.spec_path);
    GroupSpec spec = group_spec_from_json(json::parse(text));
    if (spec.name.empty()) spec.name = std::filesystem::path(cfg.spec_path).stem().string();
    const FieldDesc field = FieldDesc::parse(cfg.field);
    DecideOptions opts;
    opts.strict_paper = cfg.strict_paper;
    opts.build_witness = !cfg.no_witness;
    opts.exponent_bound = cfg.exp_bound;
    const Verdict v = decide(spec, field, opts);
    json bounds{{"exponent_bound", cfg.exp_bound}, {"strict_paper", cfg.strict_paper}};
    json report = base_report("decide", text + "\n" + field.name(), bounds, cfg);
    report["spec"] = spec.name;
    report["field"] = field.name();
    report["variant"] = spec.variant_name();
    report["amenable"] = tri_name(is_amenable(spec, field));
    if (spec.is_solvable_variant()) report["unimodular"] = is_unimodular(spec);
    report["verdict"] = verdict_to_json(v);
    emit(cfg, report, out);
    return exit_for(v.status);
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

ZElem parse_unit(const std::string& text, int degree) {
    ZElem e;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            e.emplace_back(item);
        } catch (const std::exception&) {
            throw ParseError("bad unit coordinate '" + item + "'");
        }
    }
    if (static_cast<int>(e.size()) != degree) throw ParseError("unit '" + text + "' needs " + std::to_string(degree) + " coordinates");
    return e;
}

json construction_json(const ConstructionRun& run, unsigned digits) {
    json field{{"poly", run.poly.str()},
               {"degree", run.poly.degree()},
               {"r1", run.emb.sig.r1},
               {"r2", run.emb.sig.r2},
               {"r", run.emb.sig.unit_rank()},
               {"discriminant", run.monogenic.discriminant.str()},
               {"monogenic", run.monogenic.certified},
               {"monogenic_reason", run.monogenic.reason},
               {"digits", run.emb.digits},
               {"working_digits", run.emb.working_digits}};
    json roots = json::array();
    for (const auto& z : run.emb.roots) roots.push_back(complex_json(z, digits));
    field["roots"] = roots;
    json units = json::array();
    for (std::size_t i = 0; i < run.units.units.size(); ++i) {
        units.push_back({{"coords", zelem_json(run.units.units[i])}, {"norm", run.units.norms[i].str()}});
    }
    json doc;
    doc["field"] = field;
    doc["units"] = {{"units", units},
                    {"method", run.units.method},
                    {"coeff_bound", run.units.coeff_bound},
                    {"candidates", run.units.candidates},
                    {"fundamental_certified", run.units.fundamental_certified},
                    {"torsion_order", run.units.torsion_order}};
    json rels = json::array();
    for (const auto& r : run.closure.relations) {
        rels.push_back({{"exponents", r.exponents}, {"found_as", r.found_as}, {"torsion_order", r.torsion_order}});
    }
    doc["torus_closure"] = {{"m", run.closure.m},
                            {"flag", run.closure.flag},
                            {"exponent_bound", run.closure.exponent_bound},
                            {"relations", rels},
                            {"weights", run.closure.weights}};
    doc["torus_gens"] = complex_rows(run.group.torus_gens, digits);
    doc["lattice_gens"] = complex_rows(run.group.lattice_gens, digits);
    json dets = json::array();
    for (const auto& d : run.group.det_abs) dets.push_back(to_decimal(d, digits));
    doc["det_abs"] = dets;
    doc["totally_real"] = run.group.totally_real;
    if (run.group.borel_identification) doc["borel_identification"] = *run.group.borel_identification;
    if (run.group.cocompact) {
        const auto& c = *run.group.cocompact;
        json du = json::array();
        for (const auto& u : c.delta_units) du.push_back(zelem_json(u));
        json defect = json::array();
        for (const auto& d : c.delta_det_defect) defect.push_back(to_decimal(d, 6));
        doc["cocompact"] = {{"delta_units", du},
                            {"delta_gens", complex_rows(c.delta_gens, digits)},
                            {"delta_det_defect", defect},
                            {"lattice_gens", complex_rows(c.lattice_gens, digits)}};
    }
    doc["spec"] = group_spec_to_json(run.spec);
    json sets{{"full", generator_set_to_json(run.full, digits)}};
    if (run.cocompact) sets["cocompact"] = generator_set_to_json(*run.cocompact, digits);
    doc["generator_sets"] = sets;
    return doc;
}

int cmd_construct(const Config& cfg, std::ostream& out) {
    const IntPoly f = IntPoly::parse(cfg.poly);
    ConstructOptions opts;
    opts.digits = cfg.precision;
    opts.coeff_bound = cfg.coeff_bound;
    opts.exponent_bound = cfg.exp_bound;
    opts.assume_monogenic = cfg.assume_monogenic;
    opts.trusted_irreducible = cfg.trusted_irreducible;
    for (const auto& u : cfg.units) opts.supplied_units.push_back(parse_unit(u, f.degree()));
    const ConstructionRun run = run_construction(f, opts);
    const unsigned digits = run.emb.working_digits;
    json gens = construction_json(run, digits);
    gens["tool"] = tool_json();
    write_json_file(cfg.gens_path, gens);

    json bounds{{"coeff_bound", cfg.coeff_bound},
                {"precision", cfg.precision},
                {"exponent_bound", cfg.exp_bound}};
    std::string hash_input = "construct " + f.str();
    for (const auto& u : cfg.units) hash_input += " unit " + u;
    json report = base_report("construct", hash_input, bounds, cfg);
    report["poly"] = f.str();
    report["gens_path"] = cfg.gens_path;
    report["signature"] = {{"r1", run.emb.sig.r1}, {"r2", run.emb.sig.r2}, {"r", run.emb.sig.unit_rank()}};
    report["units"] = gens["units"];
    report["torus_closure"] = {{"m", run.closure.m}, {"flag", run.closure.flag}};
    json dets = json::array();
    for (const auto& d : run.group.det_abs) dets.push_back(real_str(d));
    report["det_abs"] = dets;
    if (run.group.borel_identification) report["borel_identification"] = *run.group.borel_identification;
    report["totally_real"] = run.group.totally_real;
    emit(cfg, report, out);
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const Config& cfg, std::ostream& out) {
    const std::string text = read_file(cfg.gens_input);
    const json doc = json::parse(text);
    json set_doc;
    std::optional<GroupSpec> spec;
    std::string hash_input = text;
    if (doc.contains("generator_sets")) {
        if (!doc["generator_sets"].contains(cfg.set)) throw Error("no generator set '" + cfg.set + "'");
        set_doc = doc["generator_sets"][cfg.set];
        if (doc.contains("spec")) spec = group_spec_from_json(doc["spec"]);
    } else {
        set_doc = doc;
    }
    if (!cfg.verify_spec.empty()) {
        const std::string spec_text = read_file(cfg.verify_spec);
        spec = group_spec_from_json(json::parse(spec_text));
        hash_input += "\n" + spec_text;
    }
    const GeneratorSet gens = generator_set_from_json(set_doc);
    json bounds{{"word_length", cfg.word_len},
                {"ball_radius", cfg.ball},
                {"exponent_bound", cfg.exp_bound},
                {"cap", static_cast<std::size_t>(cfg.cap)}};
    json report = base_report("verify", hash_input, bounds, cfg);
    report["set"] = cfg.set;
    bool pass = true;
    const MarginReport margin = discreteness_margin(gens, cfg.word_len, cfg.ball, static_cast<std::size_t>(cfg.cap));
    report["margin"] = margin_json(margin);
    pass = pass && margin.min_distance > 0;
    if (spec) {
        const DensityReport dens = density_check(gens, *spec, cfg.exp_bound);
        report["density"] = density_json(dens);
        pass = pass && dens.pass();
    } else {
        report["density"] = nullptr;
    }
    if (gens.kind == GeneratorSet::Kind::Matrix2x2 && gens.matrices.size() >= 2) {
        const auto cert = pingpong_certificate(gens.matrices[0], gens.matrices[1]);
        report["pingpong"] = pingpong_json(cert);
    }
    report["pass"] = pass;
    emit(cfg, report, out);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------------

json gallery_ex1(const Config& cfg, json& bounds) {
    const std::uint64_t p = cfg.p ? static_cast<std::uint64_t>(cfg.p) : 2;
    const long n = cfg.horizon ? cfg.horizon : static_cast<long>(4 * p);
    bounds["horizon"] = n;
    const Ex1Report r = ex1_frobenius_coset_scan(p, n);
    return {{"p", p},
            {"horizon", n},
            {"elements", r.elements},
            {"pairs_checked", r.pairs_checked},
            {"pairs_certified", r.pairs_certified},
            {"all_distinct", r.all_distinct()}};
}

json gallery_ex3(const Config& cfg, json& bounds) {
    const std::uint64_t p = cfg.p ? static_cast<std::uint64_t>(cfg.p) : 2;
    const long n = cfg.horizon ? cfg.horizon : 16;
    bounds["horizon"] = n;
    const Ex3Report r = ex3_scan(p, n);
    return {{"p", p},
            {"horizon", n},
            {"variables", r.variables},
            {"equations", r.equations},
            {"solution_dim", r.solution_dim},
            {"solution_count", r.solution_count},
            {"negative_coefficients_vanish", r.negative_coefficients_vanish},
            {"residue_pattern_holds", r.residue_pattern_holds},
            {"min_valuation_x", r.min_valuation_x},
            {"min_valuation_y", r.min_valuation_y},
            {"conditions", r.conditions}};
}

json gallery_ex4(const Config& cfg, json& bounds) {
    const std::uint64_t p = cfg.p ? static_cast<std::uint64_t>(cfg.p) : 2;
    const long n = cfg.horizon ? cfg.horizon : 8;
    const std::size_t samples = cfg.samples ? cfg.samples : 32;
    bounds["horizon"] = n;
    bounds["samples"] = samples;
    const Ex4Report r = ex4_ppower_scan(p, n, samples, cfg.seed);
    std::map<long, std::size_t> histogram;
    std::size_t mismatches = 0;
    for (const auto& s : r.samples) {
        if (s.image_valuation) ++histogram[*s.image_valuation];
        if (!s.power_matches) ++mismatches;
    }
    json hist = json::array();
    for (const auto& [val, count] : histogram) hist.push_back({{"valuation", val}, {"count", count}});
    json j{{"p", p},
           {"horizon", n},
           {"samples", r.samples.size()},
           {"kernel_contains_A", r.kernel_contains_A},
           {"A_samples", r.A_samples},
           {"power_map_mismatches", mismatches},
           {"image_valuations", hist}};
    j["min_image_valuation"] = r.min_image_valuation ? json(*r.min_image_valuation) : json(nullptr);
    j["max_image_valuation"] = r.max_image_valuation ? json(*r.max_image_valuation) : json(nullptr);
    j["note"] = "image valuations are reported as computed; no compactness conclusion is drawn";
    return j;
}

json gallery_witt(const Config& cfg, json& bounds) {
    const std::size_t samples = cfg.samples ? cfg.samples : 10000;
    bounds["samples"] = samples;
    json laws = json::array();
    std::vector<std::uint64_t> primes;
    if (cfg.p) {
        primes.push_back(static_cast<std::uint64_t>(cfg.p));
    } else {
        primes = {2, 3, 5};
    }
    for (auto p : primes) {
        const WittLawReport r = witt_law_check(p, samples, cfg.seed);
        laws.push_back({{"p", p},
                        {"samples", r.samples},
                        {"associativity_failures", r.associativity_failures},
                        {"commutativity_failures", r.commutativity_failures},
                        {"inverse_failures", r.inverse_failures},
                        {"identity_failures", r.identity_failures},
                        {"p_multiple_failures", r.p_multiple_failures},
                        {"ok", r.ok()}});
    }
    json integrality = json::array();
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        const CarryIntegrality c = witt_carry_integrality(p);
        integrality.push_back({{"p", p}, {"integral", c.integral}, {"coefficients", c.integer_coeffs}});
    }
    return {{"laws", laws}, {"carry_integrality", integrality}};
}

json gallery_decide(const GroupSpec& spec, const FieldDesc& field, const Config& cfg) {
    DecideOptions opts;
    opts.strict_paper = cfg.strict_paper;
    opts.exponent_bound = cfg.exp_bound;
    const Verdict v = decide(spec, field, opts);
    json j{{"spec", spec.name}, {"field", field.name()}, {"verdict", verdict_to_json(v)}};
    if (spec.is_solvable_variant()) j["unimodular"] = is_unimodular(spec);
    return j;
}

json gallery_field(const std::string& poly, const Config& cfg, json& bounds) {
    const int word_len = cfg.word_len;
    bounds["word_length"] = word_len;
    bounds["ball_radius"] = cfg.ball;
    ConstructOptions opts;
    opts.exponent_bound = cfg.exp_bound;
    const ConstructionRun run = run_construction(IntPoly::parse(poly), opts);
    PrecisionScope scope(run.emb.working_digits);
    json j = construction_json(run, 20);
    j.erase("generator_sets");
    j.erase("spec");
    const auto margin_cap = static_cast<std::size_t>(cfg.cap);
    j["density_full"] = density_json(density_check(run.full, run.spec, cfg.exp_bound));
    j["margin_full"] = margin_json(discreteness_margin(run.full, word_len, cfg.ball, margin_cap));
    if (run.cocompact) {
        j["density_cocompact"] = density_json(density_check(*run.cocompact, run.spec, cfg.exp_bound));
        j["margin_cocompact"] = margin_json(discreteness_margin(*run.cocompact, word_len, cfg.ball, margin_cap));
    }
    if (run.emb.sig.r1 == 1 && run.emb.sig.r2 == 1) {
        // |det tau(u)| = |real embedding|^{1/2} for a norm-one unit.
        const Real root_half = sqrt(abs(embed(run.units.units[0], run.emb.roots[0]).re));
        j["sqrt_real_embedding"] = to_decimal(root_half, 20);
    }
    return j;
}

json gallery_sanov(const Config& cfg, json& bounds) {
    const int len = cfg.word_len;
    bounds["word_length"] = len;
    const IntMat2 a{1, 2, 0, 1}, b{1, 0, 2, 1};
    GeneratorSet free_gens;
    free_gens.kind = GeneratorSet::Kind::Matrix2x2;
    free_gens.matrices = {make_int_matrix("A", a), make_int_matrix("B", b)};
    const std::vector<std::vector<cplx>> sample{{1.0, 0.0}, {0.0, 1.0}, {cplx(0, 1), 0.0}, {0.0, cplx(0, 1)}};
    const GeneratorSet lifted = lift_discrete_dense(free_gens, sample, {});
    LeviData levi;
    levi.radical.unipotent = UnipotentPart(2);
    levi.radical.action.weights = {{}, {}};
    levi.is_semidirect_over_k = true;
    GroupSpec spec{levi, "SL2 x| C^2"};
    const auto words = lift_projection_words(lifted.matrices.size(), {});
    const FreeBasisReport fb = stallings_free_basis(words);
    json j;
    j["pingpong"] = pingpong_json(pingpong_certificate(a, b));
    j["word_search"] = word_search_json(exact_identity_word_search(a, b, 12), 12);
    j["lift"] = generator_set_to_json(lifted, 20);
    j["free_basis"] = {{"generators", fb.generators}, {"rank", fb.rank}, {"free_basis", fb.free_basis}};
    j["injectivity"] = injectivity_json(projection_injectivity(lifted, len));
    j["density"] = density_json(density_check(lifted, spec, cfg.exp_bound));
    return j;
}

int cmd_gallery(const Config& cfg, std::ostream& out) {
    json bounds{{"exponent_bound", cfg.exp_bound}};
    json result;
    const std::string& ex = cfg.example;
    if (ex == "ex1") {
        result = gallery_ex1(cfg, bounds);
    } else if (ex == "ex3") {
        result = gallery_ex3(cfg, bounds);
    } else if (ex == "ex4") {
        result = gallery_ex4(cfg, bounds);
    } else if (ex == "witt") {
        result = gallery_witt(cfg, bounds);
    } else if (ex == "sec8") {
        GroupSpec s = make_sec8_spec();
        s.name = "sec8";
        result = gallery_decide(s, FieldDesc::real(), cfg);
    } else if (ex == "ex5") {
        GroupSpec s = make_metabelian({2, -1, -1});
        s.name = "ex5";
        result = gallery_decide(s, FieldDesc::complex(), cfg);
    } else if (ex == "q-sqrt2") {
        result = gallery_field("x^2-2", cfg, bounds);
    } else if (ex == "cubic") {
        result = gallery_field("x^3-x-1", cfg, bounds);
    } else if (ex == "sanov") {
        result = gallery_sanov(cfg, bounds);
    } else {
        throw Error("unknown example '" + ex + "' (ex1, ex3, ex4, witt, sec8, ex5, q-sqrt2, cubic, sanov)");
    }
    if (cfg.p) bounds["p"] = cfg.p;
    std::ostringstream key;
    key << "gallery " << ex << " p=" << cfg.p << " horizon=" << cfg.horizon << " samples=" << cfg.samples
        << " word_len=" << cfg.word_len;
    json report = base_report("gallery", key.str(), bounds, cfg);
    report["example"] = ex;
    report["result"] = result;
    emit(cfg, report, out);
    return 0;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Discrete Zariski-dense subgroup decisions, constructions and checks", "zdense"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--seed", cfg.seed, "Seed for every sampled scan");
    app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", cfg.out_path, "Write the report to a file instead of stdout");
    app.add_flag("--strict-paper", cfg.strict_paper, "Disable the generalized distinct-weight rule");
    app.add_flag("--assume-monogenic", cfg.assume_monogenic, "Skip the maximal-order certificate");
    app.add_option("--exp-bound", cfg.exp_bound, "Exponent bound for relation searches")->check(CLI::PositiveNumber);

    auto* decide_cmd = app.add_subcommand("decide", "Decide existence for a group spec over a local field");
    decide_cmd->add_option("spec", cfg.spec_path, "Group spec JSON")->required();
    decide_cmd->add_option("--field", cfg.field, "R, C, Qp:5, Laurent:2");
    decide_cmd->add_flag("--no-witness", cfg.no_witness, "Do not build construction witnesses");

    auto* construct_cmd = app.add_subcommand("construct", "Build Gamma = tau(O*) x| phi(O) for a number field");
    construct_cmd->add_option("--poly", cfg.poly, "Monic integer polynomial")->required();
    construct_cmd->add_option("--coeff-bound", cfg.coeff_bound, "Unit box-search bound")->check(CLI::PositiveNumber);
    construct_cmd->add_option("--precision", cfg.precision, "Decimal digits for embeddings")->check(CLI::Range(10u, 1000u));
    construct_cmd->add_option("--unit", cfg.units, "Supplied unit as comma-separated power-basis coordinates");
    construct_cmd->add_option("--gens", cfg.gens_path, "Output path for the generator file");
    construct_cmd->add_flag("--trusted-irreducible", cfg.trusted_irreducible, "Trust irreducibility above degree 4");

    auto* verify_cmd = app.add_subcommand("verify", "Discreteness margin and density evidence for generators");
    verify_cmd->add_option("gens", cfg.gens_input, "Generator set or construction output")->required();
    verify_cmd->add_option("--spec", cfg.verify_spec, "Group spec JSON (defaults to the one embedded in gens)");
    verify_cmd->add_option("--set", cfg.set, "Generator set inside a construction file")->check(CLI::IsMember({"full", "cocompact"}));
    verify_cmd->add_option("--word-len", cfg.word_len, "Maximal word length")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--ball", cfg.ball, "Ball radius")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--cap", cfg.cap, "Word enumeration cap")->check(CLI::PositiveNumber);

    auto* gallery_cmd = app.add_subcommand("gallery", "Run a worked example");
    gallery_cmd->add_option("--example", cfg.example, "ex1, ex3, ex4, witt, sec8, ex5, q-sqrt2, cubic, sanov")->required();
    gallery_cmd->add_option("-p", cfg.p, "Prime")->check(CLI::PositiveNumber);
    gallery_cmd->add_option("--horizon", cfg.horizon, "Truncation horizon")->check(CLI::PositiveNumber);
    gallery_cmd->add_option("--samples", cfg.samples, "Sample count")->check(CLI::PositiveNumber);
    gallery_cmd->add_option("--word-len", cfg.word_len, "Maximal word length")->check(CLI::PositiveNumber);
    gallery_cmd->add_option("--ball", cfg.ball, "Ball radius")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    }
    if (cfg.p && !is_prime(cfg.p)) {
        err << "usage error: -p must be prime\n";
        return 3;
    }
    try {
        if (decide_cmd->parsed()) return cmd_decide(cfg, out);
        if (construct_cmd->parsed()) return cmd_construct(cfg, out);
        if (verify_cmd->parsed()) return cmd_verify(cfg, out);
        if (gallery_cmd->parsed()) return cmd_gallery(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "usage error: no subcommand\n";
    return 3;
}

}  // namespace zdense::cli
