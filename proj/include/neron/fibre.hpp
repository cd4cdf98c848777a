#pragma once

#include <optional>
#include <vector>

#include "neron/zlattice.hpp"

namespace neron {

// One geometric component of the special fibre: multiplicity d and geometric
// (inseparability) multiplicity e, both >= 1.
struct GeomComponent {
    Integer d{1};
    Integer e{1};
};

// Special fibre of a regular model of a curve, described over the separable
// closure: components with multiplicities, the symmetric intersection matrix,
// and a permutation generating the residue Galois action on components.
class SpecialFibre {
public:
    SpecialFibre(std::vector<GeomComponent> components, std::vector<std::size_t> sigma,
                 IntMatrix intersections, std::optional<Integer> genus, bool hypothesis_ok);

    std::size_t size() const { return components_.size(); }
    const std::vector<GeomComponent>& components() const { return components_; }
    const std::vector<std::size_t>& sigma() const { return sigma_; }
    const IntMatrix& intersections() const { return intersections_; }
    const std::optional<Integer>& genus() const { return genus_; }
    bool hypothesis_ok() const { return hypothesis_ok_; }

    // Permutation matrix sending basis vector j to basis vector sigma(j).
    IntMatrix sigma_matrix() const;

private:
    std::vector<GeomComponent> components_;
    std::vector<std::size_t> sigma_;
    IntMatrix intersections_;
    std::optional<Integer> genus_;
    bool hypothesis_ok_;
};

// Checks every structural invariant; negative semidefiniteness failures are
// reported as warnings.
ValidationReport validate(const SpecialFibre& f);
// Throws the first validation error.
void require_valid(const SpecialFibre& f);

struct Orbits {
    std::vector<std::size_t> reps;                  // ascending lowest member
    std::vector<std::size_t> orbit_of;              // component -> orbit index
    std::vector<std::vector<std::size_t>> members;  // sigma-iteration order from rep
};
Orbits component_orbits(const SpecialFibre& f);

// Orbit-level intersection data: reps, orbit sizes, and the base-field pairing
// (sum of all geometric intersection numbers between the two orbits).
struct OrbitSummary {
    std::vector<std::size_t> reps;
    IntVec sizes;
    IntMatrix intersections;
};
OrbitSummary orbit_summary(const SpecialFibre& f);

// Geometric-side maps: row j of the intersection map is row j of the matrix
// divided by e_j; the degree map is the row (d_j * e_j)_j.
IntMatrix geometric_intersection_map(const SpecialFibre& f);
IntMatrix geometric_degree_map(const SpecialFibre& f);

// Base-field maps on the orbit basis.
struct BaseMaps {
    IntMatrix intersection;  // entry (i, l) = <orbit l, orbit i> / (size_i * e_i)
    IntMatrix degree;        // row (size_i * d_i * e_i)_i
};
BaseMaps base_maps(const SpecialFibre& f);

// Orbit basis vector i -> sum of the orbit's geometric basis vectors.
IntMatrix orbit_embedding(const SpecialFibre& f);

struct MultiplicityGcds {
    Integer mult_gcd;        // gcd of the d_i
    Integer orbit_mult_gcd;  // gcd of size_i * d_i over orbits
};
MultiplicityGcds multiplicity_gcds(const SpecialFibre& f);

// Cycle of n rational (-2)-components, all multiplicities 1, genus 1. With
// involution = true, sigma is the reflection fixing components 0 and n/2
// (n must then be even; throws BAD_SHAPE otherwise), else sigma is trivial.
SpecialFibre make_cycle_fixture(std::size_t n, bool involution);

// Conjugate the whole datum by a relabeling permutation (new index of old
// component a is perm[a]).
SpecialFibre relabel(const SpecialFibre& f, const std::vector<std::size_t>& perm);

}  // namespace neron
