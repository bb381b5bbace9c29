#pragma once

#include "zdense/group_spec.hpp"
#include "zdense/schema.hpp"
#include "zdense/verify.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zdense {

enum class Status { Exists, NotExists, Unknown };
std::string status_name(Status s);

struct Condition {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Verdict {
    Status status = Status::Unknown;
    std::vector<std::string> citations;
    std::vector<Condition> conditions;
    std::vector<std::string> evidence;
    std::vector<std::string> notes;
    /// Exists verdicts resting on a pure existence theorem.
    bool non_constructive = false;
    std::optional<GeneratorSet> witness;
    std::optional<std::string> witness_source;   // e.g. "construction x^2-2"
    std::optional<std::string> witness_recipe;   // non-archimedean recipes

    void cite(const std::string& c);
    void check(const std::string& name, bool pass, const std::string& detail = "");
};

json verdict_to_json(const Verdict& v, unsigned digits = 40);

struct DecideOptions {
    bool strict_paper = false;
    bool build_witness = true;
    long exponent_bound = 20;
};

/// Throws InvalidSpec when validate_spec fails.
Verdict decide(const GroupSpec& spec, const FieldDesc& field, const DecideOptions& opts = {});

enum class Tri { True, False, Unknown };
std::string tri_name(Tri t);

Tri is_amenable(const GroupSpec& spec, const FieldDesc& field);

/// Throws WrongVariant.
Verdict decide_nonsolvable_char0(const GroupSpec& spec, const FieldDesc& field,
                                 const DecideOptions& opts = {});
Verdict decide_padic_solvable(const GroupSpec& spec, const FieldDesc& field);
Verdict decide_unipotent_real(const GroupSpec& spec);

/// A complex vector with rational real and imaginary parts.
using GaussianRationalVector = std::vector<std::pair<Rational, Rational>>;

/// `inclusion[i]` is the image of the i-th basis vector of the real form in
/// the ambient complex Lie algebra coordinates. Throws ShapeMismatch.
Verdict decide_unipotent_complex(const UnipotentPart& real_form,
                                 const std::vector<GaussianRationalVector>& inclusion,
                                 int ambient_dim);

struct Obstruction {
    SubgroupHandle handle;
    std::string description;
    std::string citation = "Prop3";
};

/// Throws NotBasisGraded.
std::optional<Obstruction> obstruction_one_dim_noncentral(const GroupSpec& spec);

Verdict necessary_real_solvable(const GroupSpec& spec);

/// Throws WrongVariant.
Verdict decide_metabelian_complex(const GroupSpec& spec, const DecideOptions& opts = {});

}  // namespace zdense
