#pragma once

#include "zdense/group_spec.hpp"
#include "zdense/number_field.hpp"
#include "zdense/verify.hpp"

#include <optional>
#include <vector>

namespace zdense {

struct ConstructOptions {
    unsigned digits = 30;
    long coeff_bound = 10;
    long exponent_bound = 20;
    std::vector<ZElem> supplied_units;
    bool assume_monogenic = false;
    bool trusted_irreducible = false;
};

/// Everything the number-field pipeline produces for one polynomial.
struct ConstructionRun {
    IntPoly poly;
    EmbeddingData emb;
    MonogenicCertificate monogenic;
    UnitGroup units;
    TorusClosure closure;
    ConstructedGroup group;
    GeneratorSet full;                    // tau(units) and phi(theta^j)
    std::optional<GeneratorSet> cocompact;
    GroupSpec spec;                       // T x| C^n with the closure weights
};

/// Throws NotIrreducible, NotMonogenic (unless assumed), RankDeficient for
/// unit rank 0, and whatever the pipeline raises.
ConstructionRun run_construction(const IntPoly& f, const ConstructOptions& opts = {});

/// Polynomial whose construction realizes the group's torus image: C^n with
/// the same weight relations (left kernel of the weight matrix).
std::optional<IntPoly> match_construction_pattern(const GroupSpec& spec);

}  // namespace zdense
