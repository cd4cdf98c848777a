#pragma once

#include "neron/cyccoh.hpp"

namespace neron {

// Combinatorial shadow of a rigid uniformization 0 -> T -> E -> B -> 0 with E(K)
// containing a period lattice M: the character rank t, the Galois generator on
// characters (sigma_x) and on M (sigma_m), and the nondegenerate pairing
// p(m, x) = v(x(m)) between them, equivariant in the sense sigma_m^T p sigma_x = p.
struct UniformizationDatum {
    std::size_t rank = 0;
    IntMatrix sigma_x;
    IntMatrix sigma_m;
    IntMatrix pairing;
};

ValidationReport validate(const UniformizationDatum& u);
void require_valid(const UniformizationDatum& u);

// Component group Hom(X, Z) / image of the period pairing, with the dual action.
SigmaFiniteGroup component_group(const UniformizationDatum& u);

// Fixed points of the component group under the dual action.
FinAbGroup rational_component_group(const UniformizationDatum& u);

// Subgroup of the rational points built from invariant data only:
// Hom(X, Z)^G / pairing(M^G). Throws EMBED_FAIL if it fails to inject.
FinAbGroup split_subgroup(const UniformizationDatum& u);

// First cohomology of the Galois action on the period lattice.
FinAbGroup period_lattice_h1(const UniformizationDatum& u);

struct SemistableReport {
    Integer action_order;
    FinAbGroup component_group;
    FinAbGroup rational_group;
    FinAbGroup split_subgroup;
    FinAbGroup period_h1;
    bool split = false;
    bool bounds_ok = false;
};

// Full computation with the containment and index bounds checked; a violated
// bound throws INCONSISTENT.
SemistableReport analyze_semistable(const UniformizationDatum& u);

}  // namespace neron
