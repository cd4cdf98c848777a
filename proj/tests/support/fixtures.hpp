#pragma once
// Shared builders for the test suites: reference fibres, random valid inputs
// for all three pipelines, and deterministic RNG helpers so failures reproduce.

#include <algorithm>
#include <random>
#include <vector>

#include "neron/fibre.hpp"
#include "neron/semistable.hpp"
#include "neron/torus.hpp"

namespace neron::testfix {

using Rng = std::mt19937_64;

inline long pick(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool coin(Rng& rng) { return pick(rng, 0, 1) == 1; }

// Two multiplicity-1 components crossing transversally in g + 1 points,
// conjugate under the swap. The resulting fibre has arithmetic genus g.
inline SpecialFibre two_component_fibre(long g, bool swap = true) {
    std::vector<GeomComponent> comps(2);
    std::vector<std::size_t> sigma = swap ? std::vector<std::size_t>{1, 0}
                                          : std::vector<std::size_t>{0, 1};
    long w = g + 1;
    return SpecialFibre(std::move(comps), std::move(sigma),
                        IntMatrix::from_rows({{-w, w}, {w, -w}}), Integer(g), true);
}

// Cycle of N rational curves, trivial action.
inline SpecialFibre cycle_fibre(std::size_t n) { return make_cycle_fixture(n, false); }

// Two rational curves meeting with multiplicity 2 (a tangent point).
inline SpecialFibre tangent_pair_fibre() {
    std::vector<GeomComponent> comps(2);
    return SpecialFibre(std::move(comps), {0, 1}, IntMatrix::from_rows({{-2, 2}, {2, -2}}),
                        Integer(1), true);
}

// Central component of multiplicity 2 with four multiplicity-1 tails.
inline SpecialFibre star_with_double_center() {
    std::vector<GeomComponent> comps(5);
    comps[0].d = 2;
    IntMatrix m(5, 5);
    m(0, 0) = -2;
    for (std::size_t t = 1; t <= 4; ++t) {
        m(t, t) = -2;
        m(0, t) = 1;
        m(t, 0) = 1;
    }
    return SpecialFibre(std::move(comps), {0, 1, 2, 3, 4}, std::move(m), Integer(1), true);
}

// Two swapped components with inseparability multiplicity 2 on both sides; the
// exact sequence contributes its whole group through the cyclic tail here.
inline SpecialFibre inseparable_pair_fibre() {
    std::vector<GeomComponent> comps(2);
    comps[0].e = 2;
    comps[1].e = 2;
    return SpecialFibre(std::move(comps), {1, 0}, IntMatrix::from_rows({{-4, 4}, {4, -4}}),
                        std::nullopt, true);
}

// Random connected configuration of rational multiplicity-1 curves: a weighted
// cycle, chain, star, or double component, with a compatible reflection or
// rotation half the time. Diagonal entries balance the rows, so every output
// passes validation; the genus is edges - vertices + 1.
inline SpecialFibre random_fibre(Rng& rng) {
    int shape = static_cast<int>(pick(rng, 0, 3));
    std::size_t n = 0;
    std::vector<std::size_t> sigma;
    IntMatrix m;
    long edges = 0;

    switch (shape) {
        case 0: {  // cycle; reflection v -> (n - v) % n maps edge i to edge n-1-i
            n = static_cast<std::size_t>(pick(rng, 3, 12));
            std::vector<long> w(n);
            for (auto& x : w) x = pick(rng, 1, 3);
            bool reflect = coin(rng);
            sigma.resize(n);
            for (std::size_t i = 0; i < n; ++i) sigma[i] = reflect ? (n - i) % n : i;
            if (reflect)
                for (std::size_t i = 0; i < n; ++i) w[i] = w[std::min(i, n - 1 - i)];
            m = IntMatrix(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t j = (i + 1) % n;
                m(i, j) += w[i];
                m(j, i) += w[i];
                edges += w[i];
            }
            break;
        }
        case 1: {  // chain; reflection v -> n-1-v maps edge i to edge n-2-i
            n = static_cast<std::size_t>(pick(rng, 2, 12));
            std::vector<long> w(n - 1);
            for (auto& x : w) x = pick(rng, 1, 3);
            bool reflect = coin(rng);
            sigma.resize(n);
            for (std::size_t i = 0; i < n; ++i) sigma[i] = reflect ? n - 1 - i : i;
            if (reflect)
                for (std::size_t i = 0; i + 1 < n; ++i) w[i] = w[std::min(i, n - 2 - i)];
            m = IntMatrix(n, n);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                m(i, i + 1) += w[i];
                m(i + 1, i) += w[i];
                edges += w[i];
            }
            break;
        }
        case 2: {  // star around component 0; rotation cycles the leaves
            n = static_cast<std::size_t>(pick(rng, 3, 12));
            std::vector<long> w(n - 1);
            bool rotate = coin(rng);
            if (rotate) {
                long x = pick(rng, 1, 3);
                for (auto& v : w) v = x;
            } else {
                for (auto& v : w) v = pick(rng, 1, 3);
            }
            sigma.resize(n);
            sigma[0] = 0;
            for (std::size_t i = 1; i < n; ++i) sigma[i] = rotate ? (i % (n - 1)) + 1 : i;
            m = IntMatrix(n, n);
            for (std::size_t i = 1; i < n; ++i) {
                m(0, i) += w[i - 1];
                m(i, 0) += w[i - 1];
                edges += w[i - 1];
            }
            break;
        }
        default: {  // two components with a multiple crossing
            n = 2;
            long x = pick(rng, 1, 6);
            sigma = coin(rng) ? std::vector<std::size_t>{1, 0} : std::vector<std::size_t>{0, 1};
            m = IntMatrix(2, 2);
            m(0, 1) = x;
            m(1, 0) = x;
            edges = x;
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) s += m(i, j);
        m(i, i) = -s;
    }
    std::vector<GeomComponent> comps(n);
    Integer genus = Integer(edges) - Integer(n) + 1;
    return SpecialFibre(std::move(comps), std::move(sigma), std::move(m), std::move(genus), true);
}

inline IntMatrix random_unimodular(Rng& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    for (int step = 0; step < 24; ++step) {
        std::size_t i = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(n) - 1));
        if (i == j) continue;
        Integer c = pick(rng, -2, 2);
        for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    }
    return u;
}

// Finite-order unimodular action assembled from small companion and permutation
// blocks, hidden by a unimodular conjugation. Avoids mixing order-4 blocks with
// order-3 or order-6 blocks, so the total order stays at most 6.
inline IntMatrix random_finite_action(Rng& rng, std::size_t rank) {
    bool four_family = coin(rng);
    IntMatrix a(rank, rank);
    std::size_t pos = 0;
    auto put1 = [&](long v) {
        a(pos, pos) = v;
        pos += 1;
    };
    auto put2 = [&](long a00, long a01, long a10, long a11) {
        a(pos, pos) = a00;
        a(pos, pos + 1) = a01;
        a(pos + 1, pos) = a10;
        a(pos + 1, pos + 1) = a11;
        pos += 2;
    };
    while (pos < rank) {
        long choice = pick(rng, 0, 3);
        if (rank - pos == 1 || choice == 0) {
            put1(coin(rng) ? 1 : -1);
        } else if (choice == 1) {
            put2(0, 1, 1, 0);  // swap, order 2
        } else if (four_family) {
            put2(0, -1, 1, 0);  // rotation, order 4
        } else if (choice == 2) {
            put2(0, -1, 1, -1);  // order 3
        } else {
            put2(0, -1, 1, 1);  // order 6
        }
    }
    IntMatrix u = random_unimodular(rng, rank);
    return u * a * inverse_unimodular(u);
}

// Valid uniformization datum: two same-order actions (the second a conjugate of
// the first) and a pairing made equivariant by averaging over the group, retried
// until it is nondegenerate.
inline UniformizationDatum random_uniformization(Rng& rng, std::size_t rank) {
    UniformizationDatum u;
    u.rank = rank;
    u.sigma_x = random_finite_action(rng, rank);
    IntMatrix conj = random_unimodular(rng, rank);
    u.sigma_m = conj * u.sigma_x * inverse_unimodular(conj);
    Integer order = *multiplicative_order(u.sigma_x);
    for (int attempt = 0; attempt < 100; ++attempt) {
        IntMatrix p0(rank, rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j) p0(i, j) = pick(rng, -3, 3);
        IntMatrix p(rank, rank);
        IntMatrix mx = IntMatrix::identity(rank);
        IntMatrix mm = IntMatrix::identity(rank);
        for (Integer j = 0; j < order; ++j) {
            p = p + mm.transpose() * p0 * mx;
            mx = mx * u.sigma_x;
            mm = mm * u.sigma_m;
        }
        if (determinant(p) != 0) {
            u.pairing = std::move(p);
            return u;
        }
    }
    throw std::runtime_error("random_uniformization: no nondegenerate pairing found");
}

// Split datum: trivial actions, random nondegenerate pairing.
inline UniformizationDatum random_split_uniformization(Rng& rng, std::size_t rank) {
    UniformizationDatum u;
    u.rank = rank;
    u.sigma_x = IntMatrix::identity(rank);
    u.sigma_m = IntMatrix::identity(rank);
    for (;;) {
        IntMatrix p(rank, rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j) p(i, j) = pick(rng, -4, 4);
        if (determinant(p) != 0) {
            u.pairing = std::move(p);
            return u;
        }
    }
}

inline IntMatrix random_permutation_matrix(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) p(perm[j], j) = 1;
    return p;
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
    IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = pick(rng, -bound, bound);
    return a;
}

}  // namespace neron::testfix
