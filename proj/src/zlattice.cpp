#include "neron/zlattice.hpp"

#include <algorithm>
#include <sstream>

namespace neron {

IntVec SmithDecomposition::diagonal() const {
    std::size_t k = std::min(s.rows(), s.cols());
    IntVec d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = s(i, i);
    return d;
}

FinAbGroup::FinAbGroup(std::size_t free_rank, IntVec factors)
    : free_rank_(free_rank), factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw Error(ErrorCode::BAD_SHAPE, "invariant factor < 2");
        if (i > 0 && !divides(factors_[i - 1], factors_[i]))
            throw Error(ErrorCode::BAD_SHAPE, "invariant factors do not form a divisor chain");
    }
}

FinAbGroup FinAbGroup::from_diagonal(std::size_t extra_free_rank, const IntVec& diag) {
    std::size_t free_rank = extra_free_rank;
    IntVec factors;
    for (const Integer& v : diag) {
        Integer a = abs(v);
        if (a == 0)
            ++free_rank;
        else if (a > 1)
            factors.push_back(a);
    }
    std::sort(factors.begin(), factors.end());
    return FinAbGroup(free_rank, std::move(factors));
}

Integer FinAbGroup::order() const {
    if (!is_finite()) throw Error(ErrorCode::BAD_SHAPE, "order of infinite group");
    Integer o = 1;
    for (const Integer& f : factors_) o *= f;
    return o;
}

std::string FinAbGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ == 1) {
        os << "Z";
        first = false;
    } else if (free_rank_ > 1) {
        os << "Z^" << free_rank_;
        first = false;
    }
    for (const Integer& f : factors_) {
        if (!first) os << " + ";
        os << "Z/" << f.get_str();
        first = false;
    }
    return os.str();
}

namespace {

// Zero every entry of row `row` right of column `pivot` by unimodular column
// operations, accumulating into the pivot column. Mirrors the ops into *v if given.
void clear_row_right(IntMatrix& h, IntMatrix* v, std::size_t row, std::size_t pivot) {
    for (std::size_t j = pivot + 1; j < h.cols(); ++j) {
        if (h(row, j) == 0) continue;
        if (h(row, pivot) == 0) {
            for (std::size_t i = 0; i < h.rows(); ++i) std::swap(h(i, pivot), h(i, j));
            if (v)
                for (std::size_t i = 0; i < v->rows(); ++i) std::swap((*v)(i, pivot), (*v)(i, j));
            continue;
        }
        XgcdResult r = xgcd(h(row, pivot), h(row, j));
        Integer a = divexact(h(row, pivot), r.g);
        Integer b = divexact(h(row, j), r.g);
        // [p c] * [[s, -b], [t, a]] keeps the span; determinant s*a + t*b = 1
        for (std::size_t i = 0; i < h.rows(); ++i) {
            Integer p = h(i, pivot), c = h(i, j);
            h(i, pivot) = r.s * p + r.t * c;
            h(i, j) = a * c - b * p;
        }
        if (v)
            for (std::size_t i = 0; i < v->rows(); ++i) {
                Integer p = (*v)(i, pivot), c = (*v)(i, j);
                (*v)(i, pivot) = r.s * p + r.t * c;
                (*v)(i, j) = a * c - b * p;
            }
    }
}

IntMatrix hnf_impl(const IntMatrix& a, IntMatrix* v_out) {
    IntMatrix h = a;
    IntMatrix v = IntMatrix::identity(a.cols());
    IntMatrix* v_ptr = v_out ? &v : nullptr;
    std::size_t pivot = 0;
    for (std::size_t row = 0; row < h.rows() && pivot < h.cols(); ++row) {
        clear_row_right(h, v_ptr, row, pivot);
        if (h(row, pivot) == 0) continue;
        if (h(row, pivot) < 0) {
            for (std::size_t i = 0; i < h.rows(); ++i) h(i, pivot) = -h(i, pivot);
            if (v_ptr)
                for (std::size_t i = 0; i < v.rows(); ++i) v(i, pivot) = -v(i, pivot);
        }
        // reduce earlier columns against this pivot: 0 <= h(row, j) < h(row, pivot)
        for (std::size_t j = 0; j < pivot; ++j) {
            Integer q = fdiv(h(row, j), h(row, pivot));
            if (q == 0) continue;
            for (std::size_t i = 0; i < h.rows(); ++i) h(i, j) -= q * h(i, pivot);
            if (v_ptr)
                for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) -= q * v(i, pivot);
        }
        ++pivot;
    }
    if (v_out) *v_out = v;
    return h;
}

std::size_t nonzero_col_count(const IntMatrix& h) {
    // after hnf_impl all zero columns sit at the right
    std::size_t k = h.cols();
    while (k > 0) {
        bool zero = true;
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (h(i, k - 1) != 0) {
                zero = false;
                break;
            }
        if (!zero) break;
        --k;
    }
    return k;
}

}  // namespace

IntMatrix hnf(const IntMatrix& a) { return hnf_impl(a, nullptr); }

HnfTransform hnf_with_transform(const IntMatrix& a) {
    HnfTransform t;
    t.h = hnf_impl(a, &t.v);
    return t;
}

IntMatrix hnf_rows(const IntMatrix& a) { return hnf(a.transpose()).transpose(); }

SmithDecomposition snf(const IntMatrix& a) {
    SmithDecomposition d;
    d.s = a;
    d.u = IntMatrix::identity(a.rows());
    d.v = IntMatrix::identity(a.cols());
    IntMatrix& s = d.s;
    std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // deterministic pivot: minimal nonzero |entry| in the trailing block,
            // row-major scan, first occurrence wins ties
            bool found = false;
            std::size_t pi = t, pj = t;
            Integer best;
            for (std::size_t i = t; i < s.rows(); ++i)
                for (std::size_t j = t; j < s.cols(); ++j) {
                    if (s(i, j) == 0) continue;
                    Integer v = abs(s(i, j));
                    if (!found || v < best) {
                        found = true;
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) {
                for (std::size_t k = t; k < n; ++k) s(k, k) = 0;
                goto done;
            }
            if (pi != t) {
                for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s(t, j), s(pi, j));
                for (std::size_t j = 0; j < d.u.cols(); ++j) std::swap(d.u(t, j), d.u(pi, j));
            }
            if (pj != t) {
                for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s(i, t), s(i, pj));
                for (std::size_t i = 0; i < d.v.rows(); ++i) std::swap(d.v(i, t), d.v(i, pj));
            }
            bool dirty = false;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                if (s(i, t) == 0) continue;
                Integer q = fdiv(s(i, t), s(t, t));
                if (q != 0) {
                    for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) -= q * s(t, j);
                    for (std::size_t j = 0; j < d.u.cols(); ++j) d.u(i, j) -= q * d.u(t, j);
                }
                if (s(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                if (s(t, j) == 0) continue;
                Integer q = fdiv(s(t, j), s(t, t));
                if (q != 0) {
                    for (std::size_t i = 0; i < s.rows(); ++i) s(i, j) -= q * s(i, t);
                    for (std::size_t i = 0; i < d.v.rows(); ++i) d.v(i, j) -= q * d.v(i, t);
                }
                if (s(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // row and column t are clean; force divisibility of the trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < s.rows() && !fixed; ++i)
                for (std::size_t j = t + 1; j < s.cols() && !fixed; ++j)
                    if (!divides(s(t, t), s(i, j))) {
                        for (std::size_t jj = 0; jj < s.cols(); ++jj) s(t, jj) += s(i, jj);
                        for (std::size_t jj = 0; jj < d.u.cols(); ++jj) d.u(t, jj) += d.u(i, jj);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s(t, t) < 0) {
            for (std::size_t j = 0; j < s.cols(); ++j) s(t, j) = -s(t, j);
            for (std::size_t j = 0; j < d.u.cols(); ++j) d.u(t, j) = -d.u(t, j);
        }
    }
done:
    return d;
}

Lattice Lattice::full(std::size_t ambient_rank) {
    return from_generators(ambient_rank, IntMatrix::identity(ambient_rank));
}

Lattice Lattice::from_generators(std::size_t ambient_rank, const IntMatrix& generators) {
    if (generators.rows() != ambient_rank)
        throw Error(ErrorCode::DIMENSION_MISMATCH, "generator rows != ambient rank");
    IntMatrix h = hnf(generators);
    Lattice l(ambient_rank);
    l.basis_ = h.col_slice(0, nonzero_col_count(h));
    return l;
}

Lattice Lattice::from_vector(const IntVec& v) {
    return from_generators(v.size(), IntMatrix::column(v));
}

bool Lattice::contains(const IntVec& x) const {
    return coords_in_lattice(*this, x).has_value();
}

bool Lattice::contains(const Lattice& other) const {
    if (ambient_ != other.ambient_) return false;
    for (std::size_t j = 0; j < other.rank(); ++j)
        if (!contains(other.basis_.col(j))) return false;
    return true;
}

Lattice kernel_lattice(const IntMatrix& a) {
    SmithDecomposition d = snf(a);
    IntVec diag = d.diagonal();
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool in_kernel = j >= diag.size() || diag[j] == 0;
        if (in_kernel) cols.push_back(d.v.col(j));
    }
    return Lattice::from_generators(a.cols(), IntMatrix::from_columns(cols, a.cols()));
}

Lattice image_lattice(const IntMatrix& a) {
    return Lattice::from_generators(a.rows(), a);
}

std::optional<IntVec> coords_in_lattice(const Lattice& l, const IntVec& x) {
    if (x.size() != l.ambient_rank())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "vector length != ambient rank");
    const IntMatrix& b = l.basis();
    IntVec rem = x;
    IntVec c(b.cols());
    std::size_t row = 0;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        // pivot row of column j: first nonzero entry (HNF is column-echelon)
        while (row < b.rows() && b(row, j) == 0) {
            if (rem[row] != 0) return std::nullopt;
            ++row;
        }
        assert(row < b.rows());
        if (!divides(b(row, j), rem[row])) return std::nullopt;
        c[j] = divexact(rem[row], b(row, j));
        if (c[j] != 0)
            for (std::size_t i = row; i < b.rows(); ++i) rem[i] -= c[j] * b(i, j);
        ++row;
    }
    for (std::size_t i = 0; i < rem.size(); ++i)
        if (rem[i] != 0) return std::nullopt;
    return c;
}

namespace {

// Coordinates of m's basis inside l's basis; throws NOT_SUBLATTICE.
IntMatrix sub_coords(const Lattice& l, const Lattice& m) {
    if (l.ambient_rank() != m.ambient_rank())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "lattices in different ambient spaces");
    if (m.rank() > l.rank()) throw Error(ErrorCode::NOT_SUBLATTICE, "sublattice rank too large");
    IntMatrix c(l.rank(), m.rank());
    for (std::size_t j = 0; j < m.rank(); ++j) {
        auto col = coords_in_lattice(l, m.basis().col(j));
        if (!col) throw Error(ErrorCode::NOT_SUBLATTICE, "quotient by a non-sublattice");
        c.set_col(j, *col);
    }
    return c;
}

}  // namespace

FinAbGroup quotient_group(const Lattice& l, const Lattice& m) {
    IntMatrix c = sub_coords(l, m);
    SmithDecomposition d = snf(c);
    return FinAbGroup::from_diagonal(l.rank() - m.rank(), d.diagonal());
}

Lattice preimage_lattice(const Lattice& l, const IntMatrix& f, const Lattice& m) {
    if (f.cols() != l.ambient_rank() || f.rows() != m.ambient_rank())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "map shape vs lattice ambients");
    // solve f*(l.basis)*c = (m.basis)*y: kernel of [f*B_l | -B_m], projected to c
    IntMatrix fb = f * l.basis();
    IntMatrix stacked = hcat(fb, -m.basis());
    Lattice ker = kernel_lattice(stacked);
    IntMatrix proj = ker.basis().row_slice(0, l.rank());
    return Lattice::from_generators(l.ambient_rank(), l.basis() * proj);
}

Lattice lattice_join(const Lattice& a, const Lattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "join of lattices in different ambient spaces");
    return Lattice::from_generators(a.ambient_rank(), hcat(a.basis(), b.basis()));
}

Lattice lattice_transform(const IntMatrix& f, const Lattice& l) {
    if (f.cols() != l.ambient_rank())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "map columns != ambient rank");
    return Lattice::from_generators(f.rows(), f * l.basis());
}

Lattice saturate(const Lattice& l) {
    // double integer-orthogonal complement
    Lattice perp = kernel_lattice(l.basis().transpose());
    return kernel_lattice(perp.basis().transpose());
}

QuotientPresentation::QuotientPresentation(const Lattice& sup, const Lattice& sub)
    : sup_(sup), sub_(sub) {
    IntMatrix c = sub_coords(sup, sub);
    SmithDecomposition d = snf(c);
    u_ = d.u;
    u_inv_ = inverse_unimodular(d.u);
    orders_.assign(sup.rank(), Integer(0));
    IntVec diag = d.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) orders_[i] = diag[i];
    // sub has full column rank, so no zero invariant factors appear among its columns
    for (std::size_t i = 0; i < sub.rank(); ++i)
        if (orders_[i] == 0)
            throw Error(ErrorCode::NOT_SUBLATTICE, "dependent sublattice basis");
    group_ = FinAbGroup::from_diagonal(sup.rank() - sub.rank(), diag);
}

IntVec QuotientPresentation::generator_lift(std::size_t i) const {
    assert(i < orders_.size());
    return mat_vec(sup_.basis(), u_inv_.col(i));
}

IntVec QuotientPresentation::class_of(const IntVec& x) const {
    auto c = coords_in_lattice(sup_, x);
    if (!c) throw Error(ErrorCode::NOT_SUBLATTICE, "class_of: vector outside the lattice");
    IntVec y = mat_vec(u_, *c);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (orders_[i] > 0) y[i] = fmod(y[i], orders_[i]);
    return y;
}

Integer subgroup_order(const IntVec& orders, const IntMatrix& gens) {
    if (gens.rows() != orders.size())
        throw Error(ErrorCode::DIMENSION_MISMATCH, "generator length != number of cyclic factors");
    for (const Integer& o : orders)
        if (o < 1) throw Error(ErrorCode::BAD_SHAPE, "subgroup_order needs finite cyclic factors");
    IntMatrix rel = IntMatrix::diagonal(orders);
    Lattice whole = image_lattice(rel);
    Lattice joined = Lattice::from_generators(orders.size(), hcat(gens, rel));
    return quotient_group(joined, whole).order();
}

}  // namespace neron
