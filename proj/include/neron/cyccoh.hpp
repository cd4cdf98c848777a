#pragma once

#include <optional>

#include "neron/zlattice.hpp"

namespace neron {

// Multiplicative order of a, or nullopt when a has infinite order (or is not
// invertible over Z). Exact: the order of any finite-order element of GL_n(Z)
// divides the product of prime powers p^k with phi(p^k) <= n, which is probed by
// binary exponentiation.
std::optional<Integer> multiplicative_order(const IntMatrix& a);

// Lattice stable under an automorphism sigma of its ambient space, carrying the
// order of the acting cyclic group (a multiple of ord sigma; defaults to it).
class SigmaLattice {
public:
    static SigmaLattice make(Lattice lattice, IntMatrix sigma);
    static SigmaLattice make(Lattice lattice, IntMatrix sigma, Integer group_order);

    std::size_t ambient_rank() const { return lattice_.ambient_rank(); }
    const Lattice& lattice() const { return lattice_; }
    const IntMatrix& sigma() const { return sigma_; }
    const Integer& group_order() const { return order_; }

private:
    SigmaLattice(Lattice lattice, IntMatrix sigma, Integer order)
        : lattice_(std::move(lattice)), sigma_(std::move(sigma)), order_(std::move(order)) {}
    Lattice lattice_;
    IntMatrix sigma_;
    Integer order_;
};

// N = 1 + sigma + ... + sigma^(m-1), computed by binary splitting.
IntMatrix norm_operator(const IntMatrix& sigma, const Integer& m);
IntMatrix norm_operator(const SigmaLattice& m);
IntMatrix difference_operator(const SigmaLattice& m);  // sigma - 1

// Tate cohomology of the cyclic group of order group_order acting through sigma:
// h1 =  ker(N) cap L / (sigma-1)L,   h2 = L^sigma / N L.  Both are finite.
FinAbGroup h1(const SigmaLattice& m);
FinAbGroup h2(const SigmaLattice& m);

// L^sigma as a sublattice of the ambient space.
Lattice invariant_lattice(const SigmaLattice& m);

// Finitely generated quotient sup/sub with a compatible automorphism.
class SigmaFiniteGroup {
public:
    static SigmaFiniteGroup make(Lattice sup, Lattice sub, IntMatrix sigma);
    static SigmaFiniteGroup make(Lattice sup, Lattice sub, IntMatrix sigma, Integer group_order);

    const Lattice& sup() const { return sup_; }
    const Lattice& sub() const { return sub_; }
    const IntMatrix& sigma() const { return sigma_; }
    const Integer& group_order() const { return order_; }
    const QuotientPresentation& presentation() const { return pres_; }
    const FinAbGroup& group() const { return pres_.group(); }

private:
    SigmaFiniteGroup(Lattice sup, Lattice sub, IntMatrix sigma, Integer order);
    Lattice sup_, sub_;
    IntMatrix sigma_;
    Integer order_;
    QuotientPresentation pres_;
};

// Fixed subgroup (sup/sub)^sigma, computed as {x in sup : (sigma-1)x in sub}/sub.
FinAbGroup finite_invariants(const SigmaFiniteGroup& q);

// Connecting maps of 0 -> sub -> mid -> quot -> 0 where quot is the image of
// quot_map restricted to mid, with the induced action. delta0 sends invariants of
// quot into h1(sub); delta1 sends h1(quot) into h2(sub). Columns are classes in
// the presentations' generator coordinates.
struct ConnectingMaps {
    QuotientPresentation h1_sub;   // ker N cap sub / (sigma-1) sub
    QuotientPresentation h2_sub;   // sub^sigma / N sub
    QuotientPresentation h1_quot;  // in quot coordinates (Z^rank(quot))
    Lattice quot_module;           // image of quot_map restricted to mid
    IntMatrix quot_sigma;          // induced action in quot coordinates
    Lattice quot_invariants;       // invariants of quot, in quot coordinates
    IntMatrix delta0;              // one column per basis vector of quot_invariants
    IntMatrix delta1;              // one column per generator of h1_quot
};

ConnectingMaps connecting_maps(const SigmaLattice& sub, const SigmaLattice& mid,
                               const IntMatrix& quot_map);

}  // namespace neron
