#include "neron/jacobian.hpp"

namespace neron {

namespace {

Lattice geometric_kernel(const SpecialFibre& f) {
    return kernel_lattice(geometric_degree_map(f));
}

Lattice geometric_image(const SpecialFibre& f) {
    return image_lattice(geometric_intersection_map(f));
}

}  // namespace

GeometricComponentGroup geometric_component_group(const SpecialFibre& f) {
    require_valid(f);
    SigmaFiniteGroup pres =
        SigmaFiniteGroup::make(geometric_kernel(f), geometric_image(f), f.sigma_matrix());
    FinAbGroup group = pres.group();
    return GeometricComponentGroup{std::move(group), std::move(pres)};
}

FinAbGroup invariants_component_group(const SpecialFibre& f) {
    return finite_invariants(geometric_component_group(f).presentation);
}

FinAbGroup base_subgroup(const SpecialFibre& f) {
    require_valid(f);
    BaseMaps maps = base_maps(f);
    return quotient_group(kernel_lattice(maps.degree), image_lattice(maps.intersection));
}

IntMatrix difference_section(const SpecialFibre& f) {
    Orbits o = component_orbits(f);
    IntMatrix s(f.size(), f.size());
    for (const auto& orbit : o.members)
        for (std::size_t j = 1; j < orbit.size(); ++j)
            for (std::size_t l = 0; l < j; ++l) s(orbit[l], orbit[j]) = 1;
    return s;
}

JacobianReport component_group_report(const SpecialFibre& f, bool with_oracle) {
    require_valid(f);
    JacobianReport rep;
    GeometricComponentGroup geo = geometric_component_group(f);
    rep.geometric_group = geo.group;
    rep.base_group = base_subgroup(f);
    if (!rep.geometric_group.is_finite() || !rep.base_group.is_finite())
        throw Error(ErrorCode::INCONSISTENT, "intersection matrix is rank-deficient");
    MultiplicityGcds g = multiplicity_gcds(f);
    rep.mult_gcd = g.mult_gcd;
    rep.orbit_mult_gcd = g.orbit_mult_gcd;

    // canonical lifted class: put (size_i * d_i / orbit_mult_gcd) at each orbit
    // representative, push through the intersection map, split off the difference
    // part with the section, and take its degree
    OrbitSummary s = orbit_summary(f);
    IntVec v1(f.size());
    for (std::size_t i = 0; i < s.reps.size(); ++i)
        v1[s.reps[i]] = divexact(s.sizes[i] * f.components()[s.reps[i]].d, g.orbit_mult_gcd);
    IntMatrix alpha = geometric_intersection_map(f);
    IntVec image_v1 = mat_vec(alpha, v1);
    IntMatrix section = difference_section(f);
    IntMatrix diff = f.sigma_matrix() - IntMatrix::identity(f.size());
    IntVec lifted = mat_vec(section, image_v1);
    if (mat_vec(diff, lifted) != image_v1)
        throw Error(ErrorCode::INCONSISTENT,
                    "lifted class is not a difference preimage; fibre data is contradictory");
    IntVec beta_row = geometric_degree_map(f).row_vec(0);
    rep.n = 0;
    for (std::size_t j = 0; j < f.size(); ++j) rep.n += beta_row[j] * lifted[j];

    const Integer& dp = g.orbit_mult_gcd;
    if (!divides(dp, 2 * rep.n))
        throw Error(ErrorCode::INCONSISTENT, "orbit gcd does not divide twice the lifted degree");
    rep.q = divexact(dp, gcd(dp, rep.n));
    Integer index = divexact(dp, g.mult_gcd);
    rep.quotient_order = divexact(index, gcd(index, rep.q));

    if (with_oracle) {
        rep.rational_group = finite_invariants(geo.presentation);
        bool ok = rep.rational_group->order() == rep.base_group.order() * rep.quotient_order;
        if (f.genus()) {
            Integer gm1 = *f.genus() - 1;
            bool q_is_one = divides(dp, gm1);
            ok = ok && (q_is_one == (rep.q == 1));
            ok = ok && divides(dp, rep.n - gm1);
        }
        rep.consistent = ok;
    }
    return rep;
}

void require_consistent(const JacobianReport& r) {
    if (r.consistent && !*r.consistent)
        throw Error(ErrorCode::INCONSISTENT, "order or genus identities failed");
}

bool embedding_check(const SpecialFibre& f) {
    require_valid(f);
    JacobianReport rep = component_group_report(f, true);
    BaseMaps maps = base_maps(f);
    Lattice base_kernel = kernel_lattice(maps.degree);
    Lattice embedded = lattice_transform(orbit_embedding(f), base_kernel);
    Lattice geo_image = geometric_image(f);
    FinAbGroup image_group = quotient_group(lattice_join(embedded, geo_image), geo_image);
    if (image_group != rep.base_group) return false;
    if (!rep.rational_group) return false;
    return rep.rational_group->order() == image_group.order() * rep.quotient_order;
}

}  // namespace neron
