#include "zdense/spec_io.hpp"

#include "zdense/errors.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace zdense {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw SchemaError(msg);
}

bool flag(const json& doc, const char* key, bool fallback) {
    if (!doc.contains("flags")) return fallback;
    return doc["flags"].value(key, fallback);
}

SemisimpleData semisimple_from(const json& doc) {
    require(doc.contains("flags") && doc["flags"].contains("isotropic") &&
                doc["flags"].contains("anisotropic_factor_present"),
            doc["variant"].get<std::string>() +
                " spec needs flags.isotropic and flags.anisotropic_factor_present");
    return {doc["flags"]["isotropic"].get<bool>(),
            doc["flags"]["anisotropic_factor_present"].get<bool>()};
}

SolvableData solvable_from(const json& doc) {
    SolvableData s;
    if (doc.contains("torus")) {
        s.torus.split_rank = doc["torus"]["split_rank"].get<int>();
        s.torus.anisotropic_rank = doc["torus"]["anisotropic_rank"].get<int>();
    }
    int dim = 0;
    bool over_q = true;
    if (doc.contains("unipotent")) {
        dim = doc["unipotent"]["dim"].get<int>();
        over_q = doc["unipotent"].value("over_Q", true);
    }
    s.unipotent = UnipotentPart(dim, over_q);
    if (doc.contains("unipotent")) {
        const json& u = doc["unipotent"];
        if (u.contains("labels")) {
            require(static_cast<int>(u["labels"].size()) == dim,
                    "unipotent.labels must have exactly dim entries");
            s.unipotent.set_labels(u["labels"].get<std::vector<std::string>>());
        }
        if (u.contains("brackets")) {
            std::set<std::array<int, 3>> listed;
            for (const auto& e : u["brackets"]) {
                listed.insert({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
            }
            for (const auto& e : u["brackets"]) {
                int i = e[0].get<int>(), j = e[1].get<int>(), k = e[2].get<int>();
                require(i <= dim && j <= dim && k <= dim,
                        "bracket index exceeds unipotent dim in " + e.dump());
                Rational c = parse_rational(e[3].get<std::string>());
                s.unipotent.set_bracket(i - 1, j - 1, k - 1, c);
                if (!listed.count({j, i, k})) s.unipotent.set_bracket(j - 1, i - 1, k - 1, -c);
            }
        }
    }
    if (doc.contains("weights")) {
        s.action.weights = doc["weights"].get<std::vector<std::vector<long>>>();
    } else {
        s.action.weights.assign(dim, std::vector<long>(s.torus.split_rank, 0));
    }
    s.commutator_over_Q = flag(doc, "commutator_over_Q", true);
    return s;
}

json solvable_fields(const SolvableData& s) {
    json j;
    j["torus"] = {{"split_rank", s.torus.split_rank},
                  {"anisotropic_rank", s.torus.anisotropic_rank}};
    const auto& u = s.unipotent;
    json brackets = json::array();
    for (int a = 0; a < u.dim(); ++a)
        for (int b = 0; b < u.dim(); ++b)
            for (int c = 0; c < u.dim(); ++c) {
                const Rational& x = u.bracket(a, b, c);
                if (x == 0) continue;
                // Emit one entry per antisymmetric pair when the partner agrees.
                if (a > b && u.bracket(b, a, c) == -x) continue;
                brackets.push_back({a + 1, b + 1, c + 1, format_rational(x)});
            }
    j["unipotent"] = {{"dim", u.dim()},
                      {"labels", u.labels()},
                      {"over_Q", u.over_Q()},
                      {"brackets", brackets}};
    j["weights"] = s.action.weights;
    j["flags"] = {{"commutator_over_Q", s.commutator_over_Q}};
    return j;
}

}  // namespace

GroupSpec group_spec_from_json(const json& doc) {
    validate_against_schema(group_spec_schema(), doc, "group spec");
    GroupSpec spec;
    spec.name = doc.value("name", "");
    const std::string variant = doc["variant"].get<std::string>();
    if (variant == "Semisimple") {
        spec.variant = semisimple_from(doc);
    } else if (variant == "Solvable") {
        spec.variant = solvable_from(doc);
    } else if (variant == "Levi") {
        LeviData l;
        l.semisimple = semisimple_from(doc);
        l.radical = solvable_from(doc);
        l.is_semidirect_over_k = flag(doc, "is_semidirect_over_k", false);
        spec.variant = l;
    } else {
        BorelData b;
        require(doc.contains("flags") && doc["flags"].contains("ambient"),
                "BorelOf spec needs flags.ambient");
        b.ambient = doc["flags"]["ambient"] == "Simple" ? BorelData::Ambient::Simple
                                                        : BorelData::Ambient::ProductOfSimples;
        b.count = doc["flags"].value("count", b.ambient == BorelData::Ambient::Simple ? 1 : 2);
        b.sl2_factors = flag(doc, "sl2_factors", false);
        spec.variant = b;
    }
    return spec;
}

json group_spec_to_json(const GroupSpec& spec) {
    json j;
    j["schema_version"] = 1;
    if (!spec.name.empty()) j["name"] = spec.name;
    j["variant"] = spec.variant_name();
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SemisimpleData>) {
                j["flags"] = {{"isotropic", v.isotropic},
                              {"anisotropic_factor_present", v.anisotropic_factor_present}};
            } else if constexpr (std::is_same_v<T, SolvableData>) {
                j.update(solvable_fields(v));
            } else if constexpr (std::is_same_v<T, LeviData>) {
                j.update(solvable_fields(v.radical));
                j["flags"]["isotropic"] = v.semisimple.isotropic;
                j["flags"]["anisotropic_factor_present"] = v.semisimple.anisotropic_factor_present;
                j["flags"]["is_semidirect_over_k"] = v.is_semidirect_over_k;
            } else {
                j["flags"] = {
                    {"ambient", v.ambient == BorelData::Ambient::Simple ? "Simple"
                                                                        : "ProductOfSimples"},
                    {"count", v.count},
                    {"sl2_factors", v.sl2_factors}};
            }
        },
        spec.variant);
    return j;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

GroupSpec load_group_spec(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    GroupSpec spec = group_spec_from_json(doc);
    if (spec.name.empty()) spec.name = path.stem().string();
    return spec;
}

}  // namespace zdense
