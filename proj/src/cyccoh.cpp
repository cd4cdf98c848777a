#include "neron/cyccoh.hpp"

#include <functional>

namespace neron {

namespace {

// Product over primes p of p^max{k : phi(p^k) <= n}; every finite order in
// GL_n(Z) divides this.
struct ExponentBound {
    Integer value = 1;
    std::vector<Integer> primes;
};

ExponentBound exponent_bound(std::size_t n) {
    ExponentBound b;
    if (n == 0) return b;
    for (Integer p = 2; p - 1 <= Integer(static_cast<unsigned long>(n)); mpz_nextprime(
             p.get_mpz_t(), p.get_mpz_t())) {
        Integer phi = p - 1;  // phi(p^k) = p^(k-1)(p-1)
        Integer pk = p;
        while (phi * p <= Integer(static_cast<unsigned long>(n))) {
            phi *= p;
            pk *= p;
        }
        b.value *= pk;
        b.primes.push_back(p);
    }
    return b;
}

}  // namespace

std::optional<Integer> multiplicative_order(const IntMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::BAD_SHAPE, "order of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return Integer(1);
    Integer det = determinant(a);
    if (det != 1 && det != -1) return std::nullopt;
    ExponentBound bound = exponent_bound(n);
    if (!a.pow(bound.value).is_identity()) return std::nullopt;
    Integer order = bound.value;
    for (const Integer& p : bound.primes)
        while (divides(p, order) && a.pow(divexact(order, p)).is_identity()) order = divexact(order, p);
    return order;
}

SigmaLattice SigmaLattice::make(Lattice lattice, IntMatrix sigma) {
    auto ord = multiplicative_order(sigma);
    if (!ord) throw Error(ErrorCode::NOT_FINITE_ORDER, "sigma has infinite order");
    return make(std::move(lattice), std::move(sigma), *ord);
}

SigmaLattice SigmaLattice::make(Lattice lattice, IntMatrix sigma, Integer group_order) {
    if (sigma.rows() != lattice.ambient_rank() || sigma.cols() != lattice.ambient_rank())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "sigma shape vs ambient rank");
    auto ord = multiplicative_order(sigma);
    if (!ord) throw Error(ErrorCode::NOT_FINITE_ORDER, "sigma has infinite order");
    if (group_order < 1 || !divides(*ord, group_order))
        throw Error(ErrorCode::ORDER_MISMATCH, "group order is not a multiple of ord(sigma)");
    for (std::size_t j = 0; j < lattice.rank(); ++j)
        if (!lattice.contains(mat_vec(sigma, lattice.basis().col(j))))
            throw Error(ErrorCode::NOT_STABLE, "sigma does not stabilize the lattice");
    return SigmaLattice(std::move(lattice), std::move(sigma), std::move(group_order));
}

IntMatrix norm_operator(const IntMatrix& sigma, const Integer& m) {
    assert(m >= 1);
    // returns (sigma^m, N_m) pairs via binary splitting:
    // N_{2k} = (1 + sigma^k) N_k,  N_{k+1} = N_k + sigma^k
    struct Pair {
        IntMatrix power, norm;
    };
    std::function<Pair(const Integer&)> rec = [&](const Integer& k) -> Pair {
        if (k == 1) return {sigma, IntMatrix::identity(sigma.rows())};
        if (mpz_even_p(k.get_mpz_t())) {
            Pair half = rec(k / 2);
            return {half.power * half.power, half.norm + half.power * half.norm};
        }
        Pair prev = rec(k - 1);
        return {prev.power * sigma, prev.norm + prev.power};
    };
    return rec(m).norm;
}

IntMatrix norm_operator(const SigmaLattice& m) { return norm_operator(m.sigma(), m.group_order()); }

IntMatrix difference_operator(const SigmaLattice& m) {
    return m.sigma() - IntMatrix::identity(m.ambient_rank());
}

namespace {

// {x in L : f x = 0} as a sublattice of the ambient space.
Lattice kernel_in_lattice(const Lattice& l, const IntMatrix& f) {
    Lattice coord_kernel = kernel_lattice(f * l.basis());
    return Lattice::from_generators(l.ambient_rank(), l.basis() * coord_kernel.basis());
}

}  // namespace

FinAbGroup h1(const SigmaLattice& m) {
    Lattice ker_n = kernel_in_lattice(m.lattice(), norm_operator(m));
    Lattice image_d = lattice_transform(difference_operator(m), m.lattice());
    return quotient_group(ker_n, image_d);
}

FinAbGroup h2(const SigmaLattice& m) {
    Lattice invariants = invariant_lattice(m);
    Lattice image_n = lattice_transform(norm_operator(m), m.lattice());
    return quotient_group(invariants, image_n);
}

Lattice invariant_lattice(const SigmaLattice& m) {
    return kernel_in_lattice(m.lattice(), difference_operator(m));
}

SigmaFiniteGroup::SigmaFiniteGroup(Lattice sup, Lattice sub, IntMatrix sigma, Integer order)
    : sup_(std::move(sup)),
      sub_(std::move(sub)),
      sigma_(std::move(sigma)),
      order_(std::move(order)),
      pres_(sup_, sub_) {}

SigmaFiniteGroup SigmaFiniteGroup::make(Lattice sup, Lattice sub, IntMatrix sigma) {
    auto ord = multiplicative_order(sigma);
    if (!ord) throw Error(ErrorCode::NOT_FINITE_ORDER, "sigma has infinite order");
    return make(std::move(sup), std::move(sub), std::move(sigma), *ord);
}

SigmaFiniteGroup SigmaFiniteGroup::make(Lattice sup, Lattice sub, IntMatrix sigma,
                                        Integer group_order) {
    // stability of both lattices; membership sub in sup is checked by the presentation
    SigmaLattice::make(sup, sigma, group_order);
    SigmaLattice::make(sub, sigma, group_order);
    return SigmaFiniteGroup(std::move(sup), std::move(sub), std::move(sigma),
                            std::move(group_order));
}

FinAbGroup finite_invariants(const SigmaFiniteGroup& q) {
    IntMatrix d = q.sigma() - IntMatrix::identity(q.sigma().rows());
    Lattice fixed = preimage_lattice(q.sup(), d, q.sub());
    return quotient_group(fixed, q.sub());
}

ConnectingMaps connecting_maps(const SigmaLattice& sub, const SigmaLattice& mid,
                               const IntMatrix& quot_map) {
    if (sub.ambient_rank() != mid.ambient_rank() || sub.sigma() != mid.sigma() ||
        sub.group_order() != mid.group_order())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "sub and mid must share ambient and action");
    if (quot_map.cols() != mid.ambient_rank())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "quot_map columns vs ambient rank");
    if (kernel_in_lattice(mid.lattice(), quot_map) != sub.lattice())
        throw Error(ErrorCode::NOT_EXACT, "sub is not the kernel of quot_map on mid");

    const Integer& m = mid.group_order();
    IntMatrix n_amb = norm_operator(mid);
    IntMatrix d_amb = difference_operator(mid);

    // quotient module: image of quot_map on mid, with preimages tracked through the
    // HNF transform so that quot basis column i = quot_map * (preimages col i)
    HnfTransform t = hnf_with_transform(quot_map * mid.lattice().basis());
    std::size_t quot_rank = 0;
    while (quot_rank < t.h.cols()) {
        bool zero = true;
        for (std::size_t i = 0; i < t.h.rows(); ++i)
            if (t.h(i, quot_rank) != 0) zero = false;
        if (zero) break;
        ++quot_rank;
    }
    IntMatrix quot_basis = t.h.col_slice(0, quot_rank);
    Lattice quot = Lattice::from_generators(quot_map.rows(), quot_basis);
    IntMatrix preimages = mid.lattice().basis() * t.v.col_slice(0, quot_rank);

    // induced action in quot coordinates
    IntMatrix quot_sigma(quot_rank, quot_rank);
    for (std::size_t j = 0; j < quot_rank; ++j) {
        IntVec moved = mat_vec(quot_map * mid.sigma(), preimages.col(j));
        auto c = coords_in_lattice(quot, moved);
        if (!c) throw Error(ErrorCode::NOT_STABLE, "induced action does not stabilize quotient");
        quot_sigma.set_col(j, *c);
    }

    // presentations
    Lattice sub_ker_n = kernel_in_lattice(sub.lattice(), n_amb);
    Lattice sub_im_d = lattice_transform(d_amb, sub.lattice());
    Lattice sub_inv = kernel_in_lattice(sub.lattice(), d_amb);
    Lattice sub_im_n = lattice_transform(n_amb, sub.lattice());
    QuotientPresentation h1_sub(sub_ker_n, sub_im_d);
    QuotientPresentation h2_sub(sub_inv, sub_im_n);

    IntMatrix n_q = norm_operator(quot_sigma, m);
    IntMatrix d_q = quot_sigma - IntMatrix::identity(quot_rank);
    QuotientPresentation h1_quot(kernel_lattice(n_q), image_lattice(d_q));
    Lattice quot_inv = kernel_lattice(d_q);

    // delta0: invariant x = quot_basis*c lifts to y = preimages*c; (sigma-1)y lies in sub
    IntMatrix delta0(h1_sub.generator_count(), quot_inv.rank());
    for (std::size_t j = 0; j < quot_inv.rank(); ++j) {
        IntVec y = mat_vec(preimages, quot_inv.basis().col(j));
        delta0.set_col(j, h1_sub.class_of(mat_vec(d_amb, y)));
    }
    // delta1: a norm-killed class lifts to y; N y lies in sub^sigma
    IntMatrix delta1(h2_sub.generator_count(), h1_quot.generator_count());
    for (std::size_t j = 0; j < h1_quot.generator_count(); ++j) {
        IntVec y = mat_vec(preimages, h1_quot.generator_lift(j));
        delta1.set_col(j, h2_sub.class_of(mat_vec(n_amb, y)));
    }

    return ConnectingMaps{std::move(h1_sub), std::move(h2_sub), std::move(h1_quot),
                          std::move(quot),   std::move(quot_sigma), std::move(quot_inv),
                          std::move(delta0), std::move(delta1)};
}

}  // namespace neron
