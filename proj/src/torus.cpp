#include "neron/torus.hpp"

namespace neron {

namespace {

void check_action(const CharacterLattice& x) {
    if (x.sigma.rows() != x.rank || x.sigma.cols() != x.rank)
        throw Error(ErrorCode::DIMENSION_MISMATCH, "sigma shape vs rank");
    if (!multiplicative_order(x.sigma))
        throw Error(ErrorCode::NOT_FINITE_ORDER, "sigma has infinite order");
}

}  // namespace

FreeCoinvariants free_coinvariants(const CharacterLattice& x) {
    check_action(x);
    Lattice moved = image_lattice(IntMatrix::identity(x.rank) - x.sigma);
    Lattice w = saturate(moved);
    // SNF of a saturated sublattice has unit diagonal; in the transformed basis it
    // spans the leading coordinates, so the trailing rows of u project onto X_G
    SmithDecomposition d = snf(w.basis());
    for (const Integer& s : d.diagonal())
        if (s != 1) throw Error(ErrorCode::INCONSISTENT, "saturation is not saturated");
    FreeCoinvariants c;
    c.rank = x.rank - w.rank();
    c.projection = hnf_rows(d.u.row_slice(w.rank(), c.rank));
    return c;
}

Lattice invariant_dual(const CharacterLattice& x) {
    check_action(x);
    return kernel_lattice(x.sigma.transpose() - IntMatrix::identity(x.rank));
}

bool dual_consistency_check(const CharacterLattice& x) {
    FreeCoinvariants c = free_coinvariants(x);
    Lattice pulled_back = image_lattice(c.projection.transpose());
    return pulled_back == invariant_dual(x);
}

TorusReport analyze_torus(const CharacterLattice& x) {
    check_action(x);
    TorusReport rep;
    rep.rank = x.rank;
    rep.action_order = *multiplicative_order(x.sigma);
    rep.dual_group = FinAbGroup(x.rank, {});
    FreeCoinvariants c = free_coinvariants(x);
    rep.coinvariant_rank = c.rank;
    rep.rational_group = FinAbGroup(c.rank, {});
    rep.dual_check = dual_consistency_check(x);
    if (!rep.dual_check)
        throw Error(ErrorCode::INCONSISTENT, "coinvariant dual does not match invariant dual");
    if (invariant_dual(x).rank() != c.rank)
        throw Error(ErrorCode::INCONSISTENT, "invariant dual rank differs from coinvariant rank");
    return rep;
}

}  // namespace neron
