#include "neron/semistable.hpp"

namespace neron {

namespace {

// dual action on Hom(X, Z): inverse transpose of the character action
IntMatrix dual_action(const UniformizationDatum& u, const Integer& order) {
    return u.sigma_x.pow(order - 1).transpose();
}

Integer shared_order(const UniformizationDatum& u) {
    auto ox = multiplicative_order(u.sigma_x);
    auto om = multiplicative_order(u.sigma_m);
    if (!ox || !om) throw Error(ErrorCode::NOT_CYCLIC, "action generator has infinite order");
    if (*ox != *om) throw Error(ErrorCode::ORDER_MISMATCH, "character and period orders differ");
    return *ox;
}

}  // namespace

ValidationReport validate(const UniformizationDatum& u) {
    ValidationReport rep;
    auto err = [&rep](ErrorCode c, const std::string& d) { rep.errors.push_back({c, d}); };
    std::size_t t = u.rank;
    if (t == 0) {
        err(ErrorCode::BAD_SHAPE, "rank must be at least 1");
        return rep;
    }
    if (u.sigma_x.rows() != t || u.sigma_x.cols() != t || u.sigma_m.rows() != t ||
        u.sigma_m.cols() != t || u.pairing.rows() != t || u.pairing.cols() != t) {
        err(ErrorCode::BAD_SHAPE, "matrices must be rank x rank");
        return rep;
    }
    auto ox = multiplicative_order(u.sigma_x);
    auto om = multiplicative_order(u.sigma_m);
    if (!ox || !om) {
        err(ErrorCode::NOT_CYCLIC, "an action generator has infinite order");
        return rep;
    }
    if (*ox != *om) err(ErrorCode::ORDER_MISMATCH, "character and period actions have different orders");
    if (determinant(u.pairing) == 0) err(ErrorCode::DEGENERATE, "pairing has determinant 0");
    if (u.sigma_m.transpose() * u.pairing * u.sigma_x != u.pairing)
        err(ErrorCode::NOT_EQUIVARIANT, "pairing is not equivariant for the two actions");
    return rep;
}

void require_valid(const UniformizationDatum& u) {
    ValidationReport rep = validate(u);
    if (!rep.ok()) throw Error(rep.errors.front().code, rep.errors.front().detail);
}

SigmaFiniteGroup component_group(const UniformizationDatum& u) {
    require_valid(u);
    Integer order = shared_order(u);
    Lattice dual = Lattice::full(u.rank);
    Lattice periods = image_lattice(u.pairing.transpose());
    IntMatrix act = dual_action(u, order);
    return SigmaFiniteGroup::make(std::move(dual), std::move(periods), std::move(act),
                                  std::move(order));
}

FinAbGroup rational_component_group(const UniformizationDatum& u) {
    return finite_invariants(component_group(u));
}

FinAbGroup split_subgroup(const UniformizationDatum& u) {
    require_valid(u);
    Integer order = shared_order(u);
    IntMatrix dual = dual_action(u, order);
    Lattice dual_invariants = kernel_lattice(dual - IntMatrix::identity(u.rank));
    Lattice period_invariants = kernel_lattice(u.sigma_m - IntMatrix::identity(u.rank));
    Lattice embedded = lattice_transform(u.pairing.transpose(), period_invariants);
    FinAbGroup sigma = quotient_group(dual_invariants, embedded);

    // the natural map into the component group must be injective: the subgroup
    // generated by the invariant duals has the same order
    Lattice periods = image_lattice(u.pairing.transpose());
    FinAbGroup image = quotient_group(lattice_join(dual_invariants, periods), periods);
    if (!sigma.is_finite() || !image.is_finite() || sigma.order() != image.order())
        throw Error(ErrorCode::EMBED_FAIL, "invariant subgroup does not inject");
    return sigma;
}

FinAbGroup period_lattice_h1(const UniformizationDatum& u) {
    require_valid(u);
    Integer order = shared_order(u);
    return h1(SigmaLattice::make(Lattice::full(u.rank), u.sigma_m, order));
}

SemistableReport analyze_semistable(const UniformizationDatum& u) {
    require_valid(u);
    SemistableReport rep;
    rep.action_order = shared_order(u);
    SigmaFiniteGroup pres = component_group(u);
    rep.component_group = pres.group();
    rep.rational_group = finite_invariants(pres);
    rep.split_subgroup = split_subgroup(u);
    rep.period_h1 = period_lattice_h1(u);
    rep.split = u.sigma_x.is_identity() && u.sigma_m.is_identity();

    Integer total = abs(determinant(u.pairing));
    bool ok = rep.component_group.is_finite() && rep.component_group.order() == total;
    Integer sub_order = rep.split_subgroup.order();
    Integer rat_order = rep.rational_group.order();
    ok = ok && divides(sub_order, rat_order);
    if (ok) ok = divides(divexact(rat_order, sub_order), rep.period_h1.order());
    if (rep.split)
        ok = ok && rep.rational_group == rep.component_group &&
             rep.split_subgroup == rep.component_group && rep.period_h1.is_trivial();
    rep.bounds_ok = ok;
    if (!ok) throw Error(ErrorCode::INCONSISTENT, "containment or index bounds failed");
    return rep;
}

}  // namespace neron
