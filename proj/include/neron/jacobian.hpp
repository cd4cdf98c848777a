#pragma once

#include "neron/cyccoh.hpp"
#include "neron/fibre.hpp"

namespace neron {

// Component group over the separable closure: ker(degree map) / im(intersection
// map), carried with its Galois presentation.
struct GeometricComponentGroup {
    FinAbGroup group;
    SigmaFiniteGroup presentation;
};

GeometricComponentGroup geometric_component_group(const SpecialFibre& f);

// Rational points of the component group, computed directly as the fixed
// subgroup of the geometric group. This is the oracle side of every cross-check.
FinAbGroup invariants_component_group(const SpecialFibre& f);

// The subgroup ker/im of the base-field maps on the orbit basis; it embeds into
// the rational points.
FinAbGroup base_subgroup(const SpecialFibre& f);

// Section of the difference operator on the span of its image: the component at
// position j of an orbit (counting from the lowest-index representative) maps to
// the sum of positions 0..j-1.
IntMatrix difference_section(const SpecialFibre& f);

struct JacobianReport {
    FinAbGroup geometric_group;
    std::optional<FinAbGroup> rational_group;  // invariants oracle; empty when skipped
    FinAbGroup base_group;                     // ker/im at the base level
    Integer mult_gcd;                          // gcd of component multiplicities
    Integer orbit_mult_gcd;                    // gcd of orbit size * multiplicity
    Integer n;                                 // degree of the canonical lifted class
    Integer q;                                 // 1 or 2
    Integer quotient_order;                    // order of the cyclic cokernel piece
    std::optional<bool> consistent;
};

// Runs the exact-sequence computation: base subgroup, the invariant n, q, and the
// cokernel order, cross-checked against the invariants oracle unless disabled.
// Violated order identities (or genus identities, when a genus is given) mark the
// report inconsistent; callers that need a hard failure use require_consistent.
JacobianReport component_group_report(const SpecialFibre& f, bool with_oracle = true);

// Throws INCONSISTENT when the report's cross-checks failed.
void require_consistent(const JacobianReport& r);

// True iff the orbit embedding maps the base subgroup isomorphically onto a
// subgroup of the rational points of index quotient_order.
bool embedding_check(const SpecialFibre& f);

}  // namespace neron
