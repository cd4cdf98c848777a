#pragma once

#include <optional>
#include <string>

#include "neron/errors.hpp"
#include "neron/int_matrix.hpp"

namespace neron {

// u * a * v = s with u, v unimodular and s diagonal, s_1 | s_2 | ..., entries >= 0.
struct SmithDecomposition {
    IntMatrix u, s, v;
    IntVec diagonal() const;
};

// Finitely generated abelian group in invariant-factor normal form: free part of
// rank free_rank plus sum of Z/f_i with 2 <= f_1 | f_2 | ... Equality of the
// normal form is isomorphism.
class FinAbGroup {
public:
    FinAbGroup() = default;
    FinAbGroup(std::size_t free_rank, IntVec factors);
    // Builds the normal form from any diagonal of nonnegative integers: zeros
    // contribute to the free rank, ones are dropped.
    static FinAbGroup from_diagonal(std::size_t extra_free_rank, const IntVec& diag);

    std::size_t free_rank() const { return free_rank_; }
    const IntVec& invariant_factors() const { return factors_; }
    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    Integer order() const;  // requires is_finite()
    std::string to_string() const;  // "0", "Z", "Z^2 + Z/2 + Z/4"

    bool operator==(const FinAbGroup& o) const {
        return free_rank_ == o.free_rank_ && factors_ == o.factors_;
    }
    bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

private:
    std::size_t free_rank_ = 0;
    IntVec factors_;
};

// Sublattice of Z^n held as basis columns in column Hermite normal form, so equal
// lattices compare equal as matrices.
class Lattice {
public:
    explicit Lattice(std::size_t ambient_rank) : ambient_(ambient_rank), basis_(ambient_rank, 0) {}
    static Lattice full(std::size_t ambient_rank);
    static Lattice from_generators(std::size_t ambient_rank, const IntMatrix& generators);
    static Lattice from_vector(const IntVec& v);

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t rank() const { return basis_.cols(); }
    const IntMatrix& basis() const { return basis_; }

    bool contains(const IntVec& x) const;
    bool contains(const Lattice& other) const;

    bool operator==(const Lattice& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Lattice& o) const { return !(*this == o); }

private:
    std::size_t ambient_;
    IntMatrix basis_;
};

// Column Hermite normal form; same shape as the input, zero columns pushed right.
IntMatrix hnf(const IntMatrix& a);

struct HnfTransform {
    IntMatrix h;  // = a * v
    IntMatrix v;  // unimodular
};
HnfTransform hnf_with_transform(const IntMatrix& a);

// Row-style Hermite normal form (canonicalizes the row lattice).
IntMatrix hnf_rows(const IntMatrix& a);

// Smith normal form. Pivoting is deterministic: the minimal nonzero |entry| of the
// trailing block, scanned row-major, first occurrence on ties.
SmithDecomposition snf(const IntMatrix& a);

// Integer kernel {x : a x = 0}; always saturated.
Lattice kernel_lattice(const IntMatrix& a);

// Column span of a.
Lattice image_lattice(const IntMatrix& a);

// Coordinates of x in l's basis; nullopt when x is not a member.
std::optional<IntVec> coords_in_lattice(const Lattice& l, const IntVec& x);

// l/m as an abstract group; throws NOT_SUBLATTICE / DIMENSION_MISMATCH.
FinAbGroup quotient_group(const Lattice& l, const Lattice& m);

// {x in l : f x in m}; throws DIMENSION_MISMATCH on inconsistent shapes.
Lattice preimage_lattice(const Lattice& l, const IntMatrix& f, const Lattice& m);

// Smallest lattice containing both arguments.
Lattice lattice_join(const Lattice& a, const Lattice& b);

// Image f(l).
Lattice lattice_transform(const IntMatrix& f, const Lattice& l);

// Smallest lattice containing l whose quotient of the ambient space is torsion-free.
Lattice saturate(const Lattice& l);

// Quotient sup/sub together with generator lifts: generator i lifts to a vector of
// sup with order orders[i] in the quotient (0 for a free generator).
class QuotientPresentation {
public:
    QuotientPresentation(const Lattice& sup, const Lattice& sub);

    const FinAbGroup& group() const { return group_; }
    const Lattice& sup() const { return sup_; }
    const Lattice& sub() const { return sub_; }
    std::size_t generator_count() const { return orders_.size(); }
    const Integer& order_of_generator(std::size_t i) const { return orders_[i]; }
    const IntVec& orders() const { return orders_; }
    IntVec generator_lift(std::size_t i) const;
    // Class of x (a member of sup) as reduced generator coordinates.
    IntVec class_of(const IntVec& x) const;

private:
    Lattice sup_, sub_;
    IntMatrix u_, u_inv_;
    IntVec orders_;
    FinAbGroup group_;
};

// Order of the subgroup of  sum_i Z/orders[i]  generated by the columns of gens;
// all orders must be >= 1.
Integer subgroup_order(const IntVec& orders, const IntMatrix& gens);

}  // namespace neron
