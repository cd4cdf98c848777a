#include "neron/int_matrix.hpp"

#include <sstream>

#include "neron/errors.hpp"

namespace neron {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NOT_SUBLATTICE: return "NOT_SUBLATTICE";
        case ErrorCode::DIMENSION_MISMATCH: return "DIMENSION_MISMATCH";
        case ErrorCode::NOT_STABLE: return "NOT_STABLE";
        case ErrorCode::NOT_EXACT: return "NOT_EXACT";
        case ErrorCode::NOT_CYCLIC: return "NOT_CYCLIC";
        case ErrorCode::NOT_FINITE_ORDER: return "NOT_FINITE_ORDER";
        case ErrorCode::ORDER_MISMATCH: return "ORDER_MISMATCH";
        case ErrorCode::ASYMMETRIC: return "ASYMMETRIC";
        case ErrorCode::NOT_EQUIVARIANT: return "NOT_EQUIVARIANT";
        case ErrorCode::ORBIT_DATA_VARIES: return "ORBIT_DATA_VARIES";
        case ErrorCode::ROW_SUM_NONZERO: return "ROW_SUM_NONZERO";
        case ErrorCode::E_DIVISIBILITY: return "E_DIVISIBILITY";
        case ErrorCode::OFF_DIAG_NEGATIVE: return "OFF_DIAG_NEGATIVE";
        case ErrorCode::DISCONNECTED: return "DISCONNECTED";
        case ErrorCode::GENUS_D: return "GENUS_D";
        case ErrorCode::GENUS_DPRIME: return "GENUS_DPRIME";
        case ErrorCode::NOT_NEG_SEMIDEFINITE: return "NOT_NEG_SEMIDEFINITE";
        case ErrorCode::DEGENERATE: return "DEGENERATE";
        case ErrorCode::BAD_SHAPE: return "BAD_SHAPE";
        case ErrorCode::PARSE: return "PARSE";
        case ErrorCode::SCHEMA: return "SCHEMA";
        case ErrorCode::INTEGRALITY: return "INTEGRALITY";
        case ErrorCode::INCONSISTENT: return "INCONSISTENT";
        case ErrorCode::EMBED_FAIL: return "EMBED_FAIL";
    }
    return "UNKNOWN";
}

std::optional<ErrorCode> error_code_from_string(const std::string& name) {
    static const ErrorCode all[] = {
        ErrorCode::NOT_SUBLATTICE,  ErrorCode::DIMENSION_MISMATCH, ErrorCode::NOT_STABLE,
        ErrorCode::NOT_EXACT,       ErrorCode::NOT_CYCLIC,         ErrorCode::NOT_FINITE_ORDER,
        ErrorCode::ORDER_MISMATCH,  ErrorCode::ASYMMETRIC,         ErrorCode::NOT_EQUIVARIANT,
        ErrorCode::ORBIT_DATA_VARIES, ErrorCode::ROW_SUM_NONZERO,  ErrorCode::E_DIVISIBILITY,
        ErrorCode::OFF_DIAG_NEGATIVE, ErrorCode::DISCONNECTED,     ErrorCode::GENUS_D,
        ErrorCode::GENUS_DPRIME,    ErrorCode::NOT_NEG_SEMIDEFINITE, ErrorCode::DEGENERATE,
        ErrorCode::BAD_SHAPE,       ErrorCode::PARSE,              ErrorCode::SCHEMA,
        ErrorCode::INTEGRALITY,     ErrorCode::INCONSISTENT,       ErrorCode::EMBED_FAIL,
    };
    for (ErrorCode code : all)
        if (name == to_string(code)) return code;
    return std::nullopt;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1;
    return a;
}

IntMatrix IntMatrix::diagonal(const IntVec& d) {
    IntMatrix a(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
    return a;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntMatrix a(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        assert(row.size() == c);
        std::size_t j = 0;
        for (long v : row) a(i, j++) = v;
        ++i;
    }
    return a;
}

IntMatrix IntMatrix::column(const IntVec& v) {
    IntMatrix a(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) a(i, 0) = v[i];
    return a;
}

IntMatrix IntMatrix::row(const IntVec& v) {
    IntMatrix a(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) a(0, j) = v[j];
    return a;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols, std::size_t rows) {
    IntMatrix a(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        assert(cols[j].size() == rows);
        for (std::size_t i = 0; i < rows; ++i) a(i, j) = cols[j][i];
    }
    return a;
}

bool IntMatrix::is_zero() const {
    for (const Integer& v : e_)
        if (v != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) a(j, i) = (*this)(i, j);
    return a;
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntVec IntMatrix::row_vec(std::size_t i) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

void IntMatrix::set_col(std::size_t j, const IntVec& v) {
    assert(v.size() == rows_);
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::col_slice(std::size_t first, std::size_t count) const {
    assert(first + count <= cols_);
    IntMatrix a(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) a(i, j) = (*this)(i, first + j);
    return a;
}

IntMatrix IntMatrix::row_slice(std::size_t first, std::size_t count) const {
    assert(first + count <= rows_);
    IntMatrix a(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < cols_; ++j) a(i, j) = (*this)(first + i, j);
    return a;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    assert(cols_ == o.rows_);
    IntMatrix a(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& v = (*this)(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) a(i, j) += v * o(k, j);
        }
    return a;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    IntMatrix a(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) a.e_[i] = e_[i] + o.e_[i];
    return a;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    IntMatrix a(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) a.e_[i] = e_[i] - o.e_[i];
    return a;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix a(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) a.e_[i] = -e_[i];
    return a;
}

IntMatrix IntMatrix::scaled(const Integer& c) const {
    IntMatrix a(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) a.e_[i] = c * e_[i];
    return a;
}

IntMatrix IntMatrix::pow(const Integer& k) const {
    assert(is_square());
    assert(k >= 0);
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    Integer e = k;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

IntVec mat_vec(const IntMatrix& a, const IntVec& x) {
    assert(x.size() == a.cols());
    IntVec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
    assert(a.rows() == b.rows());
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

// Bareiss: division-free-style elimination where every division is exact.
Integer determinant(const IntMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::BAD_SHAPE, "determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix w = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) = divexact(w(i, j) * w(k, k) - w(i, k) * w(k, j), prev);
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
    Integer det = determinant(a);
    if (det != 1 && det != -1)
        throw Error(ErrorCode::BAD_SHAPE, "inverse_unimodular: determinant is not a unit");
    std::size_t n = a.rows();
    // Gauss-Jordan over Q; the result is integral because det is a unit.
    std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i][j] = mpq_class(a(i, j));
        w[i][n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && w[p][k] == 0) ++p;
        assert(p < n);
        std::swap(w[k], w[p]);
        mpq_class piv = w[k][k];
        for (std::size_t j = 0; j < 2 * n; ++j) w[k][j] /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || w[i][k] == 0) continue;
            mpq_class f = w[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) w[i][j] -= f * w[k][j];
        }
    }
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class v = w[i][n + j];
            v.canonicalize();
            assert(v.get_den() == 1);
            inv(i, j) = v.get_num();
        }
    return inv;
}

}  // namespace neron
