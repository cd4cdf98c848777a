#pragma once

#include "neron/cyccoh.hpp"

namespace neron {

// Character lattice of a torus with the residue Galois action of its splitting
// extension, given by a single finite-order unimodular generator.
struct CharacterLattice {
    std::size_t rank = 0;
    IntMatrix sigma;
};

// Torsion-free coinvariants X_G = X / saturation(span{x - sigma x}), returned as
// the quotient's rank together with a surjective projection matrix whose kernel
// is exactly the saturated span. Rows are canonicalized.
// Throws NOT_FINITE_ORDER when sigma has infinite order.
struct FreeCoinvariants {
    std::size_t rank = 0;
    IntMatrix projection;  // rank x X.rank
};
FreeCoinvariants free_coinvariants(const CharacterLattice& x);

// Fixed sublattice of the dual action: ker(sigma^T - 1).
Lattice invariant_dual(const CharacterLattice& x);

// Checks that pulling the dual of X_G back along the projection gives exactly the
// invariant dual lattice (the identification defining the rational points).
bool dual_consistency_check(const CharacterLattice& x);

struct TorusReport {
    std::size_t rank = 0;
    Integer action_order;
    FinAbGroup dual_group;      // component group over the splitting field: free
    FinAbGroup rational_group;  // rational points: free of rank = coinvariant rank
    std::size_t coinvariant_rank = 0;
    bool dual_check = false;
};

TorusReport analyze_torus(const CharacterLattice& x);

}  // namespace neron
