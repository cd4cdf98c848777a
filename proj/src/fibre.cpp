#include "neron/fibre.hpp"

#include <sstream>

namespace neron {

SpecialFibre::SpecialFibre(std::vector<GeomComponent> components, std::vector<std::size_t> sigma,
                           IntMatrix intersections, std::optional<Integer> genus,
                           bool hypothesis_ok)
    : components_(std::move(components)),
      sigma_(std::move(sigma)),
      intersections_(std::move(intersections)),
      genus_(std::move(genus)),
      hypothesis_ok_(hypothesis_ok) {
    std::size_t n = components_.size();
    if (n == 0) throw Error(ErrorCode::BAD_SHAPE, "fibre needs at least one component");
    if (sigma_.size() != n || intersections_.rows() != n || intersections_.cols() != n)
        throw Error(ErrorCode::BAD_SHAPE, "component count, sigma and matrix sizes disagree");
    for (const GeomComponent& c : components_)
        if (c.d < 1 || c.e < 1) throw Error(ErrorCode::BAD_SHAPE, "multiplicities must be >= 1");
    for (std::size_t j : sigma_)
        if (j >= n) throw Error(ErrorCode::BAD_SHAPE, "sigma index out of range");
}

IntMatrix SpecialFibre::sigma_matrix() const {
    IntMatrix p(size(), size());
    for (std::size_t j = 0; j < size(); ++j) p(sigma_[j], j) = 1;
    return p;
}

namespace {

bool sigma_bijective(const std::vector<std::size_t>& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t j : sigma) {
        if (seen[j]) return false;
        seen[j] = true;
    }
    return true;
}

std::string at(std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "entry (" << i << ", " << j << ")";
    return os.str();
}

// exact test that -m is positive semidefinite, by rational symmetric elimination
bool negative_semidefinite(const IntMatrix& m) {
    std::size_t n = m.rows();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = mpq_class(-m(i, j));
    std::vector<bool> done(n, false);
    for (;;) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n && p == n; ++i) {
            if (done[i]) continue;
            if (a[i][i] < 0) return false;
            if (a[i][i] > 0) p = i;
        }
        if (p == n) break;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || i == p) continue;
            mpq_class f = a[i][p] / a[p][p];
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j] && j != p) a[i][j] -= f * a[p][j];
        }
        done[p] = true;
    }
    // remaining diagonal is zero; the rows must vanish entirely
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!done[j] && a[i][j] != 0) return false;
    }
    return true;
}

}  // namespace

ValidationReport validate(const SpecialFibre& f) {
    ValidationReport rep;
    std::size_t n = f.size();
    const IntMatrix& m = f.intersections();
    auto err = [&rep](ErrorCode c, const std::string& d) { rep.errors.push_back({c, d}); };

    if (!sigma_bijective(f.sigma())) {
        err(ErrorCode::NOT_CYCLIC, "sigma is not a permutation");
        return rep;  // orbit structure undefined, nothing else is checkable
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j > i && m(i, j) != m(j, i)) {
                err(ErrorCode::ASYMMETRIC, at(i, j));
            }
            if (i != j && m(i, j) < 0) err(ErrorCode::OFF_DIAG_NEGATIVE, at(i, j));
        }

    const auto& sig = f.sigma();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(sig[i], sig[j]) != m(i, j)) {
                err(ErrorCode::NOT_EQUIVARIANT, at(i, j));
                goto equivariance_done;
            }
equivariance_done:

    for (std::size_t i = 0; i < n; ++i) {
        if (f.components()[i].d != f.components()[sig[i]].d ||
            f.components()[i].e != f.components()[sig[i]].e) {
            std::ostringstream os;
            os << "components " << i << " and " << sig[i];
            err(ErrorCode::ORBIT_DATA_VARIES, os.str());
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        Integer sum = 0;
        for (std::size_t j = 0; j < n; ++j) sum += f.components()[j].d * m(i, j);
        if (sum != 0) {
            std::ostringstream os;
            os << "row " << i;
            err(ErrorCode::ROW_SUM_NONZERO, os.str());
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!divides(f.components()[j].e, m(i, j))) err(ErrorCode::E_DIVISIBILITY, at(i, j));

    {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j)
                if (!seen[j] && j != v && m(v, j) > 0) {
                    seen[j] = true;
                    stack.push_back(j);
                }
        }
        for (bool s : seen)
            if (!s) {
                err(ErrorCode::DISCONNECTED, "dual graph is not connected");
                break;
            }
    }

    if (f.genus()) {
        MultiplicityGcds g = multiplicity_gcds(f);
        Integer gm1 = *f.genus() - 1;
        if (!divides(g.mult_gcd, gm1))
            err(ErrorCode::GENUS_D, "gcd of multiplicities does not divide genus - 1");
        if (!divides(g.orbit_mult_gcd, 2 * gm1))
            err(ErrorCode::GENUS_DPRIME,
                "gcd of orbit multiplicities does not divide 2*genus - 2");
    }

    if (!negative_semidefinite(m))
        rep.warnings.push_back(
            {ErrorCode::NOT_NEG_SEMIDEFINITE, "intersection matrix is not negative semidefinite"});
    return rep;
}

void require_valid(const SpecialFibre& f) {
    ValidationReport rep = validate(f);
    if (!rep.ok()) throw Error(rep.errors.front().code, rep.errors.front().detail);
}

Orbits component_orbits(const SpecialFibre& f) {
    std::size_t n = f.size();
    Orbits o;
    o.orbit_of.assign(n, n);
    for (std::size_t start = 0; start < n; ++start) {
        if (o.orbit_of[start] != n) continue;
        std::vector<std::size_t> members;
        std::size_t c = start;
        do {
            o.orbit_of[c] = o.reps.size();
            members.push_back(c);
            c = f.sigma()[c];
        } while (c != start);
        o.reps.push_back(start);
        o.members.push_back(std::move(members));
    }
    return o;
}

OrbitSummary orbit_summary(const SpecialFibre& f) {
    Orbits o = component_orbits(f);
    std::size_t k = o.reps.size();
    OrbitSummary s;
    s.reps = o.reps;
    s.sizes.resize(k);
    for (std::size_t i = 0; i < k; ++i) s.sizes[i] = Integer(o.members[i].size());
    s.intersections = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            Integer sum = 0;
            for (std::size_t a : o.members[i])
                for (std::size_t b : o.members[l]) sum += f.intersections()(a, b);
            s.intersections(i, l) = sum;
        }
    return s;
}

IntMatrix geometric_intersection_map(const SpecialFibre& f) {
    std::size_t n = f.size();
    IntMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t v = 0; v < n; ++v) {
            if (!divides(f.components()[j].e, f.intersections()(v, j)))
                throw Error(ErrorCode::INTEGRALITY, "geometric multiplicity does not divide");
            a(j, v) = divexact(f.intersections()(v, j), f.components()[j].e);
        }
    return a;
}

IntMatrix geometric_degree_map(const SpecialFibre& f) {
    IntMatrix b(1, f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        b(0, j) = f.components()[j].d * f.components()[j].e;
    return b;
}

BaseMaps base_maps(const SpecialFibre& f) {
    OrbitSummary s = orbit_summary(f);
    std::size_t k = s.reps.size();
    BaseMaps maps;
    maps.intersection = IntMatrix(k, k);
    maps.degree = IntMatrix(1, k);
    for (std::size_t i = 0; i < k; ++i) {
        const GeomComponent& c = f.components()[s.reps[i]];
        Integer weight = s.sizes[i] * c.e;
        for (std::size_t l = 0; l < k; ++l) {
            if (!divides(weight, s.intersections(l, i)))
                throw Error(ErrorCode::INTEGRALITY, "orbit weight does not divide pairing");
            maps.intersection(i, l) = divexact(s.intersections(l, i), weight);
        }
        maps.degree(0, i) = s.sizes[i] * c.d * c.e;
    }
    return maps;
}

IntMatrix orbit_embedding(const SpecialFibre& f) {
    Orbits o = component_orbits(f);
    IntMatrix lambda(f.size(), o.reps.size());
    for (std::size_t i = 0; i < o.reps.size(); ++i)
        for (std::size_t a : o.members[i]) lambda(a, i) = 1;
    return lambda;
}

MultiplicityGcds multiplicity_gcds(const SpecialFibre& f) {
    OrbitSummary s = orbit_summary(f);
    MultiplicityGcds g{0, 0};
    for (std::size_t i = 0; i < s.reps.size(); ++i) {
        const Integer& d = f.components()[s.reps[i]].d;
        g.mult_gcd = gcd(g.mult_gcd, d);
        g.orbit_mult_gcd = gcd(g.orbit_mult_gcd, s.sizes[i] * d);
    }
    return g;
}

SpecialFibre make_cycle_fixture(std::size_t n, bool involution) {
    if (n < 2) throw Error(ErrorCode::BAD_SHAPE, "cycle needs at least two components");
    if (involution && n % 2 != 0)
        throw Error(ErrorCode::BAD_SHAPE, "reflection fixture needs an even cycle");
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        m(i, j) += 1;
        m(j, i) += 1;
        m(i, i) = -2;
    }
    std::vector<std::size_t> sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = involution ? (n - i) % n : i;
    return SpecialFibre(std::vector<GeomComponent>(n), std::move(sigma), std::move(m), Integer(1),
                        true);
}

SpecialFibre relabel(const SpecialFibre& f, const std::vector<std::size_t>& perm) {
    std::size_t n = f.size();
    if (perm.size() != n || !sigma_bijective(perm))
        throw Error(ErrorCode::BAD_SHAPE, "relabeling must be a permutation");
    std::vector<GeomComponent> comps(n);
    std::vector<std::size_t> sigma(n);
    IntMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        comps[perm[a]] = f.components()[a];
        sigma[perm[a]] = perm[f.sigma()[a]];
        for (std::size_t b = 0; b < n; ++b) m(perm[a], perm[b]) = f.intersections()(a, b);
    }
    return SpecialFibre(std::move(comps), std::move(sigma), std::move(m), f.genus(),
                        f.hypothesis_ok());
}

}  // namespace neron
