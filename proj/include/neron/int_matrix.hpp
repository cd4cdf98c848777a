#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "neron/numeric.hpp"

namespace neron {

// Dense matrix over Z, row-major storage. Empty shapes (0 x n, n x 0) are legal
// and behave as the corresponding maps between zero modules.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const IntVec& d);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix column(const IntVec& v);
    static IntMatrix row(const IntVec& v);
    static IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return e_[r * cols_ + c];
    }
    const Integer& operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return e_[r * cols_ + c];
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;
    bool is_identity() const;

    IntMatrix transpose() const;
    IntVec col(std::size_t j) const;
    IntVec row_vec(std::size_t i) const;
    void set_col(std::size_t j, const IntVec& v);

    // columns [first, first + count) as a new matrix
    IntMatrix col_slice(std::size_t first, std::size_t count) const;
    IntMatrix row_slice(std::size_t first, std::size_t count) const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Integer& c) const;

    // a^k for k >= 0 (square matrices)
    IntMatrix pow(const Integer& k) const;

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    IntVec e_;
};

IntVec mat_vec(const IntMatrix& a, const IntVec& x);
IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);

// Exact determinant (Bareiss fraction-free elimination).
Integer determinant(const IntMatrix& a);

// Exact inverse of a matrix with determinant +-1; throws BAD_SHAPE otherwise.
IntMatrix inverse_unimodular(const IntMatrix& a);

}  // namespace neron
